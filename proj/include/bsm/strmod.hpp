// Graded free modules with POT orders, Groebner bases, kernels, minimal
// resolutions and the string modules.
#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bsm/polyring.hpp"

namespace bsm {

// Position over term: generator priority first, then lex on variables with
// higher index bigger.
struct ModOrder {
  int nvars = 0;
  std::vector<int> priority;  // per generator, larger is bigger
  std::vector<int> shift;     // generator degrees
  std::vector<std::string> names;
  int ngens() const { return static_cast<int>(priority.size()); }
};
using OrderPtr = std::shared_ptr<const ModOrder>;

struct ModKey {
  int gen;
  Monomial mono;
  bool operator==(const ModKey& o) const { return gen == o.gen && mono == o.mono; }
};

int compare_lex(const Monomial& a, const Monomial& b, int nvars);
int compare_keys(const ModKey& a, const ModKey& b, const ModOrder& o);

class ModElem {
 public:
  using Term = std::pair<ModKey, mpq_class>;

  ModElem() = default;
  explicit ModElem(OrderPtr o) : ord_(std::move(o)) {}
  static ModElem gen(OrderPtr o, int g, const Polynomial& coeff);
  static ModElem from_coords(OrderPtr o, const std::vector<Polynomial>& coords);
  static ModElem from_terms(OrderPtr o, std::vector<Term> terms);

  const OrderPtr& order() const { return ord_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Term& lead() const { return terms_.front(); }
  std::vector<Polynomial> coords() const;
  // 2*|mono| + shift; throws if inhomogeneous
  int degree() const;
  bool is_homogeneous() const;

  ModElem operator+(const ModElem& o) const;
  ModElem operator-(const ModElem& o) const;
  ModElem scaled(const mpq_class& c) const;
  ModElem times(const Monomial& m, const mpq_class& c) const;
  ModElem times(const Polynomial& f) const;
  bool operator==(const ModElem& o) const { return terms_ == o.terms_; }
  // same element viewed in another order with the same generators
  ModElem reordered(OrderPtr o) const;
  std::string str() const;

 private:
  void normalize();
  OrderPtr ord_;
  std::vector<Term> terms_;  // strictly decreasing keys, nonzero coefficients
};

bool mono_divides(const Monomial& a, const Monomial& b);

struct Reduction {
  ModElem remainder;
  std::vector<Polynomial> quotients;
};
Reduction reduce(const ModElem& f, const std::vector<ModElem>& G);
ModElem normal_form(const ModElem& f, const std::vector<ModElem>& G);

std::vector<ModElem> buchberger(const std::vector<ModElem>& gens);
// every S-pair reduces to zero
bool is_groebner(const std::vector<ModElem>& G);
// lm(g) for g in G
std::vector<ModKey> leading_keys(const std::vector<ModElem>& G);
// both generate the same submodule
bool same_submodule(const std::vector<ModElem>& A, const std::vector<ModElem>& B);

// Kernel of the map sending generator i of the source to images[i].
// Source generators get the given priority/shift; returns generators of the kernel.
std::vector<ModElem> kernel(const std::vector<ModElem>& images, OrderPtr source);
// minimal homogeneous generators (graded Nakayama, increasing degree)
std::vector<ModElem> minimize(const std::vector<ModElem>& gens);

struct Resolution {
  std::vector<GradedRank> ranks;               // F_0, F_1, ...
  std::vector<std::vector<ModElem>> maps;      // maps[i]: images of F_i generators in F_{i-1} (F_{-1} = ambient)
  int pd = -1;
  bool exact = false;  // reached a zero kernel within max_len
  bool minimal() const;  // no unit entries in the differentials d_1, d_2, ...
};
// v^{-d} for a generator of degree d
GradedRank rank_of_degrees(const std::vector<ModElem>& gens);
// shuffle != nullptr permutes the generator priorities of each syzygy module
Resolution free_resolution(const std::vector<ModElem>& gens, int max_len = 8,
                           std::mt19937_64* shuffle = nullptr);

// Linear change of coordinates sending the given independent linear forms to
// the first variables and completing with standard ones.
struct CoordChange {
  int n = 0, nx = 0;
  std::vector<std::vector<mpq_class>> A, Ainv;  // z = A e, e = Ainv z
  std::vector<Polynomial> to_new_subs;          // e_i in terms of z
  std::vector<Polynomial> to_old_subs;          // z_i in terms of e
  Polynomial to_new(const Polynomial& f) const { return f.substitute(to_new_subs); }
  Polynomial to_old(const Polynomial& f) const { return f.substitute(to_old_subs); }
};
struct DependentRoots : std::invalid_argument {
  DependentRoots() : std::invalid_argument("linear forms are dependent") {}
};
CoordChange coordinate_change(const std::vector<Polynomial>& x);

// String module data for |x| = n and `extra` further variables; x_i is variable i-1.
struct StringModule {
  int n = 0, extra = 0;
  int nvars() const { return n + extra; }
  OrderPtr ambient;    // R^{n-1}, e_{n-1} > ... > e_1, degree 0
  OrderPtr pairs;      // e_{i,j}: larger j first, then smaller i; degree 4
  OrderPtr dual;       // e*_{i,j}: same order, degree -4
  OrderPtr eps;        // epsilon_h: epsilon_n > ... > epsilon_1, degree -2
  std::vector<std::pair<int, int>> pair_index;  // generator -> (i,j)
  int pair_gen(int i, int j) const;
  Polynomial x(int i) const;

  StringModule(int n, int extra);
  std::vector<ModElem> p_gens() const;            // p_{i,j} in the ambient module
  ModElem p(int i, int j) const;
  bool member(const ModElem& f) const;            // defining congruences
  std::vector<ModElem> phi_images() const;        // e_{i,j} -> p_{i,j}
  ModElem q(int i, int j, int k) const;           // x_k e_ij + x_i e_jk - x_j e_ik
  std::vector<ModElem> q_gens() const;
  ModElem theta(int h) const;
  std::vector<ModElem> thetas() const;
  ModElem w() const;                              // sum x_h epsilon_h
  // relation x_k t_ij + x_i t_jk - x_j t_ik on the dual coordinates
  Polynomial thetah_relation(const ModElem& t, int i, int j, int k) const;
  // St dual as a kernel: R^{pairs} -> R^{triples}
  std::vector<ModElem> dual_kernel() const;
  // psi: epsilon_h -> theta^(h); its kernel
  std::vector<ModElem> psi_kernel() const;
};

struct StReport {
  int n = 0, extra = 0;
  bool p_groebner = false, random_members_reduce = false, q_generate_kernel = false, q_groebner = false;
  bool theta_relations = false, theta_groebner = false, theta_is_dual = false, psi_w_zero = false,
       psi_kernel_is_w = false;
  int pd_st = -1, pd_dual = -1;
  std::vector<GradedRank> st_ranks, dual_ranks;
  bool minimal = false;
  bool ok(bool with_dual) const;
};
StReport st_check(int n, int extra, std::mt19937_64& rng, bool with_dual = true);

void to_json(nlohmann::json& j, const StReport& r);

}  // namespace bsm
