// Closeness, Algorithms 1 and 2, balanced and acyclic cases, residual
// constraint extraction.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsm/locmod.hpp"

namespace bsm {

// Sub(t,w) with cached per-member data; families of members are bitsets.
using Family = std::uint64_t;
constexpr int kMaxFamilyBits = 64;

struct OrderContext {
  SubSet sub;
  std::vector<Subexpr> el;
  std::vector<std::map<Reflection, Mask>> msets;
  SubGraph gr;

  OrderContext(const ExprPtr& t, const Permutation& w);
  explicit OrderContext(SubSet s);
  int size() const { return sub.size(); }
  int m() const { return sub.m(); }
  int index_of(Mask b) const { return sub.index_of(b); }
  Family all() const;
  std::string family_string(Family f) const;  // "{000000,111111}"
};

enum class Mode { Plain, Con };

struct PerP {
  Reflection p;
  Mask M;
  int n_p;
  Mask chosen;
};

struct ClosenessCert {
  Mask Y = 0;
  std::vector<PerP> per_p;
  int dist = 0;
};

struct InFamily : std::invalid_argument {
  InFamily() : std::invalid_argument("subexpression already in the family") {}
};

// Phi_p(eps) without the empty set
std::vector<Mask> phi_p(const OrderContext& c, Family phi, int eps, const Reflection& p);
int n_p(const OrderContext& c, Family phi, int eps, const Reflection& p);
std::optional<ClosenessCert> closeness(const OrderContext& c, Family phi, int eps, Mode mode);
// Sub^Y_con(t,w,eps) as a family
Family con_component(const OrderContext& c, int eps, Mask Y);

// The generator attached to an accepted step: nabla^Y_eps on Sub(t,w), cut to
// the connected component in con mode.
FnOnSub certificate_mu(const OrderContext& c, int eps, const ClosenessCert& cert, Mode mode);

struct StepEntry {
  Family phi = 0;
  GradedRank P;
  Family parent = 0;
  int eps = -1;
  Mask Y = 0;
  int dist = 0;
};

struct Caps {
  std::size_t max_family = 200000;
  bool greedy = false;
  int workers = 1;
};

enum class Outcome { Completed, Premature, CapExceeded };

struct Trace {
  Mode mode = Mode::Plain;
  std::vector<std::vector<StepEntry>> steps;
  Outcome outcome = Outcome::Premature;
  int last_step = 0;  // last nonempty step
  bool greedy = false;
  std::optional<GradedRank> P;  // set when completed
  std::string outcome_str() const;
};

struct UniquenessViolation : std::logic_error {
  using std::logic_error::logic_error;
};

Trace run_algorithm(const OrderContext& c, Mode mode, const Caps& caps = {});
inline Trace algorithm1(const OrderContext& c, const Caps& caps = {}) { return run_algorithm(c, Mode::Plain, caps); }
inline Trace algorithm2(const OrderContext& c, const Caps& caps = {}) { return run_algorithm(c, Mode::Con, caps); }
// exhaustive first; if the family cap is hit, follow one order
Trace run_with_fallback(const OrderContext& c, Mode mode, const Caps& caps = {});

struct BalancedReport {
  bool balanced = false;
  std::optional<int> witness;  // a member that is not balanced
  std::vector<int> order;
  std::vector<int> dists;
  std::vector<int> positives;
  bool total_order = false;
  bool perfect = false;
  GradedRank P;
};
BalancedReport balanced_order(const OrderContext& c);

struct AcyclicReport {
  bool forest = false;
  int vertices = 0, comps = 0;
  GradedRank P;
  std::vector<int> cycle;  // witness when not a forest
};
AcyclicReport acyclic_rank(const OrderContext& c);

struct Congruence {
  std::vector<std::pair<int, int>> terms;  // (member index, sign)
  Reflection p;
  int exponent = 0;
  std::string str(const OrderContext& c) const;
};

struct ResidualReport {
  std::vector<int> free;
  std::vector<Congruence> conds;
  bool string_pattern = false;
  std::vector<int> path;  // free members in path order
  std::vector<Reflection> roots;
  bool independent = false;
};
ResidualReport residual_constraints(const OrderContext& c, Family phi);

// rank of a list of linear forms over Q
int linear_rank(const std::vector<Polynomial>& forms);

nlohmann::json trace_json(const OrderContext& c, const Trace& t);

}  // namespace bsm
