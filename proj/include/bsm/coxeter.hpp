// Type A Coxeter data: permutations, transpositions, reflection expressions
// and the cyclic sequence calculus.
#pragma once

#include <string>
#include <vector>

#include "bsm/polyring.hpp"

namespace bsm {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);  // 1-based images
  static Permutation identity(int n);
  static Permutation transposition(int n, int i, int j);
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int rank() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }
  const std::vector<int>& images() const { return img_; }

  // (a*b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  int length() const;  // number of inversions
  bool is_identity() const;
  // independent cycles, fixed points omitted, each starting at its least element
  std::vector<std::vector<int>> cycles() const;
  Polynomial act(const Polynomial& f) const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }
  std::string str() const;  // cycle notation, "1" for identity

 private:
  std::vector<int> img_;
};

struct Reflection {
  int n = 0, i = 0, j = 0;

  Reflection() = default;
  Reflection(int n_, int a, int b);  // normalizes to i<j

  Permutation perm() const { return Permutation::transposition(n, i, j); }
  Polynomial root() const { return Polynomial::root(n, i, j); }
  bool operator==(const Reflection& o) const { return n == o.n && i == o.i && j == o.j; }
  bool operator!=(const Reflection& o) const { return !(*this == o); }
  bool operator<(const Reflection& o) const { return std::pair(i, j) < std::pair(o.i, o.j); }
  std::string str() const;  // "(i,j)"
};

Polynomial root_of(const Reflection& t);
// w t w^{-1}
Reflection conjugate_reflection(const Permutation& w, const Reflection& t);
Polynomial act(const Permutation& w, const Polynomial& f);
Polynomial demazure(const Reflection& t, const Polynomial& f);
Polynomial wp(const Reflection& t, const Polynomial& f);

struct ReflExpr {
  int n = 0;
  std::vector<Reflection> entries;

  ReflExpr() = default;
  ReflExpr(int n_, std::vector<Reflection> e);
  static ReflExpr from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

  int size() const { return static_cast<int>(entries.size()); }
  const Reflection& operator[](int i) const { return entries[i - 1]; }  // 1-based
  bool operator==(const ReflExpr& o) const { return n == o.n && entries == o.entries; }
  bool operator!=(const ReflExpr& o) const { return !(*this == o); }
  // positions (1-based) carrying p
  std::vector<int> M(const Reflection& p) const;
  // distinct reflections in order of first appearance
  std::vector<Reflection> support() const;
  std::string str() const;
};

// Cyclic calculus on finite sequences viewed as periodic ones.
namespace seq {

template <class T>
std::vector<T> shift(const std::vector<T>& x, int k) {
  int m = static_cast<int>(x.size());
  std::vector<T> r;
  r.reserve(m);
  for (int i = 1; i <= m; ++i) r.push_back(x[(((k + i - 1) % m) + m) % m]);
  return r;
}

template <class T>
std::vector<T> reverse(const std::vector<T>& x) {
  return std::vector<T>(x.rbegin(), x.rend());
}

// x_1 u (x*[k]) with x* = (x_2..x_m)
template <class T>
std::vector<T> shift1(const std::vector<T>& x, int k) {
  if (x.empty()) throw std::invalid_argument("shift1 of empty sequence");
  std::vector<T> tail(x.begin() + 1, x.end()), r{x[0]};
  if (!tail.empty()) tail = shift(tail, k);
  r.insert(r.end(), tail.begin(), tail.end());
  return r;
}

// x_1 u reverse(x*)
template <class T>
std::vector<T> ddot(const std::vector<T>& x) {
  if (x.empty()) throw std::invalid_argument("ddot of empty sequence");
  std::vector<T> r{x[0]};
  r.insert(r.end(), x.rbegin(), x.rend() - 1);
  return r;
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <class T>
std::vector<T> truncate(const std::vector<T>& x) {
  if (x.empty()) throw std::invalid_argument("truncate of empty sequence");
  return std::vector<T>(x.begin(), x.end() - 1);
}

}  // namespace seq

ReflExpr shift(const ReflExpr& t, int k);
ReflExpr reverse(const ReflExpr& t);
ReflExpr shift1(const ReflExpr& t, int k);
ReflExpr ddot(const ReflExpr& t);
ReflExpr concat(const ReflExpr& a, const ReflExpr& b);
ReflExpr truncate(const ReflExpr& t);

// reduce a position to 1..m
inline int cyc(int i, int m) { return ((i - 1) % m + m) % m + 1; }

// Conjugate the entries strictly inside (x1,x2), (x3,x4), ... by the common
// reflection; for odd |X| the interval after the last element is included.
ReflExpr fold_expr(const ReflExpr& t, std::vector<int> X);

ReflExpr make_a(int n, const std::vector<int>& i);
ReflExpr make_b(int n, const std::vector<int>& i);
ReflExpr make_c(int n, const std::vector<int>& i);
ReflExpr make_D(int n, const std::vector<int>& i);
ReflExpr make_sequence(char kind, int n, const std::vector<int>& i);

void to_json(nlohmann::json& j, const Permutation& p);
void from_json(const nlohmann::json& j, Permutation& p);
void to_json(nlohmann::json& j, const ReflExpr& t);
void from_json(const nlohmann::json& j, ReflExpr& t);

// "1,3,2" or "(1 2)(3 4)" with explicit rank
Permutation parse_perm(const std::string& s, int n);

}  // namespace bsm
