// D-sequence solution tables, chords mod 2n-1, and the non-freeness pipeline.
#pragma once

#include <string>
#include <vector>

#include "bsm/orderalg.hpp"
#include "bsm/strmod.hpp"

namespace bsm {

// {a, n-1+a} in Z/(2n-1)
struct Chord {
  int n = 0, a = 0;

  Chord() = default;
  Chord(int n_, int a_);
  int mod() const { return 2 * n - 1; }
  int A1() const { return a; }
  int A2() const { return (a + n - 1) % mod(); }
  Chord plus(int j) const { return Chord(n, a + j); }
  // representatives in 1..2n-1
  Mask positions() const;
  std::vector<int> pos_list() const;
  bool operator==(const Chord& o) const { return n == o.n && a == o.a; }
  std::string str() const;  // "{3,7}" with representatives in 1..2n-1
};
// the chord with these two residues, if any
std::optional<Chord> chord_of(int n, Mask positions);

// rotate a bit sequence of length m: result_i = bits_{k+i}
Mask shift_bits(Mask bits, int m, int k);
// e^(l) of length 2n-1, l taken mod 2n-1
Mask e_row(int n, int l);

struct SolutionRow {
  int l = 0;
  Subexpr e;  // e^(l)[k] inside D(i)[k]
  ReflExpr bullet;
};

struct LabelingFailure : std::logic_error {
  using std::logic_error::logic_error;
};

struct SolutionTable {
  int n = 0, k = 0;
  std::vector<int> i;
  ExprPtr t;
  std::vector<SolutionRow> rows;  // l = 0..2n-2

  // filled by chord_label, indexed by the chord's a
  bool labeled = false;
  std::vector<int> a_bullet;  // e^{A,.} = rows[a_bullet[a]]
  std::vector<int> bullet_a;  // e^{.,A} = rows[bullet_a[a]]
  std::vector<Reflection> tA;
  std::vector<Polynomial> alphaA;

  int len() const { return 2 * n - 1; }
  const SolutionRow& row(int l) const;  // cyclic
  const Subexpr& eA(const Chord& A) const { return rows[a_bullet[A.a]].e; }
  const Subexpr& Ae(const Chord& A) const { return rows[bullet_a[A.a]].e; }
  const Reflection& t_of(const Chord& A) const { return tA[A.a]; }
  std::vector<Chord> chords() const;
};

// k reduced into 1-n..n-1
int normalize_k(int n, int k);
std::vector<int> identity_arrangement(int n);
std::vector<int> random_arrangement(int n, std::mt19937_64& rng);

SolutionTable e_table(int n, int k, const std::vector<int>& i);
// brute-force Sub(D(i)[k],1) equals the rows
bool verify_solutions(const SolutionTable& tab);
void chord_label(SolutionTable& tab);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};
std::vector<CheckResult> structure_checks(const SolutionTable& tab);

struct DseqReport {
  int n = 0, k = 0;
  std::vector<int> i;
  std::uint64_t seed = 0;
  bool solutions_ok = false, labels_ok = false, checks_ok = false;
  std::vector<CheckResult> checks;
  std::string outcome;
  int last_step = 0;
  bool greedy = false;
  std::optional<GradedRank> P;
  int surviving = 0;
  bool surviving_P_ok = false;  // all 1 + n v^-2
  bool arcs_ok = false;         // step families are the chord arcs
  bool string_pattern = false, roots_match = false, independent = false, independence_all_A = false;
  std::vector<std::string> residual;
  std::vector<std::string> roots;
  std::optional<StReport> st;
  bool pd_ok = false;
  bool verdict = false;
};
DseqReport dseq_report(int n, int k, const std::vector<int>& i, const Caps& caps = {}, std::uint64_t seed = 1);
// Gr(Sub(D(i)[k],1)) with row and chord labels
std::string table_dot(const SolutionTable& tab);

void to_json(nlohmann::json& j, const CheckResult& c);
void to_json(nlohmann::json& j, const DseqReport& r);
nlohmann::json table_json(const SolutionTable& tab);

}  // namespace bsm
