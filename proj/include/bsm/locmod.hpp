// Functions on subexpression sets: localization image, membership,
// copy/concentration calculus, bases and the inner product.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bsm/subexpr.hpp"

namespace bsm {

class FnOnSub {
 public:
  FnOnSub() = default;
  explicit FnOnSub(SubSet domain);  // zero function
  FnOnSub(SubSet domain, std::vector<Polynomial> values);
  static FnOnSub constant(SubSet domain, const Polynomial& c);
  static FnOnSub indicator(SubSet domain, const std::vector<Mask>& support);
  static FnOnSub from(SubSet domain, const std::function<Polynomial(const Subexpr&)>& f);

  const SubSet& domain() const { return dom_; }
  const ReflExpr& expr() const { return *dom_.expr; }
  int rank() const { return dom_.expr->n; }
  const std::vector<Polynomial>& values() const { return vals_; }
  const Polynomial& operator()(Mask b) const;
  const Polynomial& at(int k) const { return vals_[k]; }
  void set(Mask b, Polynomial v);

  bool is_zero() const;
  // homogeneous degree (in the grading deg e_i = 2); nullopt if zero or inhomogeneous
  std::optional<int> degree() const;

  FnOnSub& operator+=(const FnOnSub& o);
  FnOnSub& operator-=(const FnOnSub& o);
  friend FnOnSub operator+(FnOnSub a, const FnOnSub& b) { return a += b; }
  friend FnOnSub operator-(FnOnSub a, const FnOnSub& b) { return a -= b; }
  friend FnOnSub operator*(const FnOnSub& a, const FnOnSub& b);  // pointwise
  friend FnOnSub operator*(const Polynomial& r, const FnOnSub& g);
  bool operator==(const FnOnSub& o) const;

  // restrict to a subset of the domain
  FnOnSub restrict_to(const SubSet& sub) const;
  // extend by zero from a subset to a larger domain
  FnOnSub extend_to(const SubSet& sup) const;

 private:
  void check_same(const FnOnSub& o) const;
  SubSet dom_;
  std::vector<Polynomial> vals_;
};

SubSet full_domain(const ExprPtr& t);

FnOnSub res_tensor(const ExprPtr& t, const std::vector<Polynomial>& a);

enum class SigmaVariant { Full, Even };
Polynomial sigma(const FnOnSub& g, const Subexpr& eps, Mask X, SigmaVariant v);

enum class Kind { Xt, Xw, XwPhi, XW };  // X(t), X_w, X_w(Phi), X^w
Kind parse_kind(const std::string& s);
std::string kind_name(Kind k);

struct Violation {
  Mask eps;
  Reflection p;
  Mask X;
  int exponent;
  std::string str(int m) const;
};

struct MembershipResult {
  bool member = true;
  std::optional<Violation> violation;
  std::optional<Mask> nonzero_on_phi;  // X_w(Phi) only
  long checks = 0;
};

MembershipResult membership(const FnOnSub& g, Kind kind, const std::vector<Mask>& phi = {});

// t with its last entry removed
ExprPtr prefix_expr(const ExprPtr& t);

enum class Up { Copy, Nabla0, Nabla1 };
// g over Sub(t') -> over Sub(t)
FnOnSub transfer_up(const FnOnSub& g, const ExprPtr& t, Up mode);
FnOnSub copy_up(const FnOnSub& g, const ExprPtr& t);
FnOnSub nabla_up(const FnOnSub& g, const ExprPtr& t, int e);
// g over Sub(t) -> over Sub(t')
FnOnSub restrict_last(const FnOnSub& g, int e);
FnOnSub divdiff_last(const FnOnSub& g, int e);  // throws NotDivisible outside X(t)

// Decorated trees, stored as labels of root paths. A path lists L_m, L_{m-1}, ...
// with 'D' for copy and 'N' for concentration.
class DecoTree {
 public:
  DecoTree() = default;
  explicit DecoTree(std::map<std::string, int> labels) : labels_(std::move(labels)) {}
  int label(const std::string& path) const;  // default 0
  void set(const std::string& path, int v) { labels_[path] = v; }
  const std::map<std::string, int>& labels() const { return labels_; }
  static DecoTree random(int m, std::mt19937_64& rng);

 private:
  std::map<std::string, int> labels_;
};

// L is encoded as a mask: bit i set <=> L_i = nabla
std::string word_string(Mask L, int m);  // e.g. "DN"
FnOnSub basis_element(const ExprPtr& t, const DecoTree& tree, Mask L);
std::vector<FnOnSub> basis(const ExprPtr& t, const DecoTree& tree);
std::map<Mask, Polynomial> express_in_basis(const FnOnSub& g, const DecoTree& tree);
FnOnSub combine(const ExprPtr& t, const DecoTree& tree, const std::map<Mask, Polynomial>& coeffs);

FnOnSub nabla_X(const Subexpr& eps, Mask X);  // over Sub(t)
FnOnSub mu(const Subexpr& eps, const SubSet& sub_w);

Polynomial o_of(const Subexpr& eps);
RationalFn inner(const FnOnSub& g, const FnOnSub& h);
std::vector<std::vector<RationalFn>> pairing_matrix(const std::vector<FnOnSub>& A, const std::vector<FnOnSub>& B);

// Elements of X^w: every mu_eps, and for admissible (eps, p, X) with |X| >= 2
// the combination sum_{Y even in X} (-1)^{|Y|_X} mu_{f_Y eps} / alpha_p^{|X|-1}.
std::vector<FnOnSub> upper_samples(const SubSet& sub_w);

void to_json(nlohmann::json& j, const FnOnSub& g);
FnOnSub fn_from_json(const nlohmann::json& j);

}  // namespace bsm
