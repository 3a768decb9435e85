// Subexpressions of a reflection expression and the combinatorics on them.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsm/coxeter.hpp"

namespace bsm {

// Index sets and bit sequences share one encoding: position i <-> bit i-1.
using Mask = std::uint32_t;
constexpr int kMaxLen = 24;

inline Mask bit(int i) { return Mask(1) << (i - 1); }
Mask mask_of(const std::vector<int>& positions);
std::vector<int> positions(Mask x);
inline int popcount(Mask x) { return __builtin_popcount(x); }
// key whose numeric order is the lexicographic order of "e_1 e_2 ... e_m"
Mask lex_key(Mask bits, int m);
std::string bit_string(Mask bits, int m);
Mask parse_bits(const std::string& s);
std::string set_string(Mask x);  // "{1,3}"

using ExprPtr = std::shared_ptr<const ReflExpr>;
inline ExprPtr make_expr(ReflExpr t) { return std::make_shared<const ReflExpr>(std::move(t)); }

class Subexpr {
 public:
  Subexpr() = default;
  Subexpr(ExprPtr t, Mask bits);
  Subexpr(ExprPtr t, const std::string& bits);

  const ReflExpr& expr() const { return *t_; }
  const ExprPtr& expr_ptr() const { return t_; }
  int size() const { return t_->size(); }
  Mask bits() const { return bits_; }
  bool at(int i) const { return bits_ & bit(i); }
  std::string str() const { return bit_string(bits_, size()); }

  const Permutation& before(int i) const { return pre_[i - 1]; }  // eps^{<i}, i = 1..m+1
  const Permutation& upto(int i) const { return pre_[i]; }        // eps^{<=i}
  const Permutation& target() const { return pre_.back(); }       // eps^max
  const Reflection& conj(int i) const { return conj_[i - 1]; }    // eps^i
  Polynomial to(int i) const;                                     // eps^{->i}
  Polynomial from(int i) const;                                   // eps^{<-i}
  ReflExpr bullet() const;
  Mask M(const Reflection& p) const;
  // nonempty M_p sets keyed by p
  std::map<Reflection, Mask> Msets() const;
  Subexpr fold(Mask X) const { return Subexpr(t_, bits_ ^ X); }

  bool operator==(const Subexpr& o) const { return bits_ == o.bits_ && (t_ == o.t_ || *t_ == *o.t_); }
  bool operator!=(const Subexpr& o) const { return !(*this == o); }

 private:
  ExprPtr t_;
  Mask bits_ = 0;
  std::vector<Permutation> pre_;
  std::vector<Reflection> conj_;
};

// |Y|_X: elements of Y at odd positions of X counted from the top
int rel_card(Mask Y, Mask X);

struct SubSet {
  ExprPtr expr;
  std::optional<Permutation> target;
  std::vector<Mask> members;  // sorted by lex_key

  int size() const { return static_cast<int>(members.size()); }
  int m() const { return expr->size(); }
  int index_of(Mask b) const;
  bool contains(Mask b) const { return index_of(b) >= 0; }
  Subexpr at(int k) const { return Subexpr(expr, members[k]); }
  // canonical subset, members sorted
  SubSet subset(const std::vector<Mask>& bits) const;
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SubSet enumerate(const ExprPtr& t, const std::optional<Permutation>& w, int cap = kMaxLen);
void sort_canonical(std::vector<Mask>& v, int m);

// the class of eps under the relation "differs only at positions with eps^k = p"
SubSet equiv_class(const Subexpr& eps, const Reflection& p, bool target_restricted);

struct Edge {
  int a, b;  // member indices, a < b
  Reflection p;
  Mask Y;
};

struct SubGraph {
  SubSet vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;
};

// If delta differs from eps exactly at positions all carrying the same eps^k, returns it.
std::optional<Reflection> edge_reflection(const Subexpr& eps, Mask delta_bits);
SubGraph graph(const SubSet& phi);
std::vector<std::vector<int>> components(const SubGraph& g);
bool is_forest(const SubGraph& g);
std::string to_dot(const SubGraph& g, const std::string& name = "Gr");

enum class FrozenMode { Freeze, Unfreeze, Con };
SubSet frozen_set(const SubSet& sub, const Subexpr& eps, Mask X, FrozenMode mode);

struct Balance {
  Mask positive = 0, negative = 0;
  bool balanced = false;
};
Balance balance(const Subexpr& eps);
bool balanced_set(const SubSet& phi);

void to_json(nlohmann::json& j, const SubSet& s);

}  // namespace bsm
