// Exact polynomials over Q in e_1..e_n, rational functions with root
// denominators, and Laurent ranks in v.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace bsm {

constexpr int kMaxVars = 16;
using Monomial = std::array<std::uint8_t, kMaxVars>;

int mono_degree(const Monomial& m);

// graded lex, larger monomials first
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, mpq_class, GrlexGreater>;

  Polynomial() = default;
  explicit Polynomial(int n);

  static Polynomial constant(int n, const mpq_class& c);
  static Polynomial var(int n, int i);  // e_i, 1-based
  static Polynomial linear(int n, const std::vector<mpq_class>& coeffs);
  static Polynomial root(int n, int i, int j);  // e_i - e_j

  int rank() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  // polynomial degree (sum of exponents); -1 for zero
  int degree() const;
  bool is_homogeneous() const;
  const Monomial& leading_monomial() const;
  const mpq_class& leading_coeff() const;
  mpq_class coeff(const Monomial& m) const;
  // coefficient of e_i in the linear part
  mpq_class linear_coeff(int i) const;

  void add_term(const Monomial& m, const mpq_class& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const mpq_class& c) const;
  Polynomial pow(int k) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // e_i -> e_{images[i-1]}
  Polynomial permute(const std::vector<int>& images) const;
  // e_i -> subs[i-1]; result rank is that of subs
  Polynomial substitute(const std::vector<Polynomial>& subs) const;
  // swap e_i and e_j
  Polynomial swapped(int i, int j) const;
  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  std::string str() const;

 private:
  void check_rank(const Polynomial& o) const;
  int n_ = 0;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

struct NotDivisible : std::runtime_error {
  NotDivisible() : std::runtime_error("not divisible") {}
};

// f/g when g divides f in Q[e]
std::optional<Polynomial> exact_div(const Polynomial& f, const Polynomial& g);
Polynomial exact_div_or_throw(const Polynomial& f, const Polynomial& g);
bool divisible_by_power(const Polynomial& f, const Polynomial& alpha, int k);
// largest k with alpha^k | f (f != 0)
int multiplicity(const Polynomial& f, const Polynomial& alpha);

// Demazure operator and the invariant projection for the transposition (i j)
Polynomial demazure(int i, int j, const Polynomial& f);
Polynomial wp(int i, int j, const Polynomial& f);

// random homogeneous polynomial of the given degree, small integer coefficients
Polynomial random_poly(int n, int deg, int nterms, std::mt19937_64& rng, int cmax = 5);

// A root factor e_i - e_j (i<j) with multiplicity.
struct RootFactor {
  int i, j, mult;
};

// numerator / prod of root factors, kept reduced
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(Polynomial num, std::vector<RootFactor> den);

  const Polynomial& numerator() const { return num_; }
  const std::vector<RootFactor>& factors() const { return den_; }
  Polynomial denominator() const;
  bool in_R() const { return den_.empty(); }
  std::string str() const;
  bool operator==(const RationalFn& o) const;

 private:
  void reduce();
  Polynomial num_;
  std::vector<RootFactor> den_;
};

// Laurent polynomial in v with nonnegative integer coefficients
class GradedRank {
 public:
  GradedRank() = default;
  static GradedRank monomial(int exp, std::int64_t c = 1);

  const std::map<int, std::int64_t>& coeffs() const { return c_; }
  std::int64_t at(int exp) const;
  std::int64_t total() const;
  bool is_zero() const { return c_.empty(); }

  GradedRank& operator+=(const GradedRank& o);
  friend GradedRank operator+(GradedRank a, const GradedRank& b) { return a += b; }
  GradedRank shifted(int k) const;
  bool operator==(const GradedRank& o) const { return c_ == o.c_; }
  bool operator!=(const GradedRank& o) const { return c_ != o.c_; }
  bool operator<(const GradedRank& o) const { return c_ < o.c_; }

  // e.g. "1+3v^-2+v^-4"
  std::string str() const;

 private:
  std::map<int, std::int64_t> c_;
};

void to_json(nlohmann::json& j, const Polynomial& p);
void from_json(const nlohmann::json& j, Polynomial& p);
void to_json(nlohmann::json& j, const GradedRank& r);
void from_json(const nlohmann::json& j, GradedRank& r);

}  // namespace bsm
