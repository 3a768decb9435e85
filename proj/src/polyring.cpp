#include "bsm/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace bsm {

int mono_degree(const Monomial& m) {
  int d = 0;
  for (auto x : m) d += x;
  return d;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  return a > b;
}

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 0 || n > kMaxVars) throw std::invalid_argument("polynomial rank out of range");
}

Polynomial Polynomial::constant(int n, const mpq_class& c) {
  Polynomial p(n);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::var(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("variable index");
  Polynomial p(n);
  Monomial m{};
  m[i - 1] = 1;
  p.add_term(m, 1);
  return p;
}

Polynomial Polynomial::linear(int n, const std::vector<mpq_class>& coeffs) {
  if (static_cast<int>(coeffs.size()) != n) throw std::invalid_argument("linear: coefficient count");
  Polynomial p(n);
  for (int i = 0; i < n; ++i) {
    Monomial m{};
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

Polynomial Polynomial::root(int n, int i, int j) { return var(n, i) - var(n, j); }

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

int Polynomial::degree() const { return terms_.empty() ? -1 : mono_degree(terms_.begin()->first); }

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree();
  for (auto& [m, c] : terms_)
    if (mono_degree(m) != d) return false;
  return true;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero");
  return terms_.begin()->first;
}

const mpq_class& Polynomial::leading_coeff() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero");
  return terms_.begin()->second;
}

mpq_class Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class Polynomial::linear_coeff(int i) const {
  Monomial m{};
  m[i - 1] = 1;
  return coeff(m);
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_rank(const Polynomial& o) const {
  if (n_ != o.n_ && !o.terms_.empty() && !terms_.empty())
    throw std::invalid_argument("polynomial rank mismatch");
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_rank(o);
  if (terms_.empty()) n_ = std::max(n_, o.n_);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_rank(o);
  if (terms_.empty()) n_ = std::max(n_, o.n_);
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_rank(b);
  Polynomial r(std::max(a.n_, b.n_));
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) {
      Monomial m;
      for (int k = 0; k < kMaxVars; ++k) m[k] = ma[k] + mb[k];
      r.add_term(m, ca * cb);
    }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::scaled(const mpq_class& c) const {
  if (c == 0) return Polynomial(n_);
  Polynomial r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = constant(n_, 1);
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return n_ == o.n_ && terms_ == o.terms_;
}

Polynomial Polynomial::permute(const std::vector<int>& images) const {
  if (static_cast<int>(images.size()) != n_) throw std::invalid_argument("permute: rank mismatch");
  Polynomial r(n_);
  for (auto& [m, c] : terms_) {
    Monomial mm{};
    for (int i = 0; i < n_; ++i) mm[images[i] - 1] = m[i];
    r.terms_.emplace(mm, c);
  }
  return r;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& subs) const {
  if (static_cast<int>(subs.size()) != n_) throw std::invalid_argument("substitute: arity mismatch");
  int n2 = subs.empty() ? 0 : subs[0].rank();
  Polynomial r(n2);
  for (auto& [m, c] : terms_) {
    Polynomial t = constant(n2, c);
    for (int i = 0; i < n_; ++i)
      if (m[i]) t *= subs[i].pow(m[i]);
    r += t;
  }
  return r;
}

Polynomial Polynomial::swapped(int i, int j) const {
  std::vector<int> img(n_);
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[i - 1], img[j - 1]);
  return permute(img);
}

mpq_class Polynomial::evaluate(const std::vector<mpq_class>& point) const {
  mpq_class s = 0;
  for (auto& [m, c] : terms_) {
    mpq_class t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = mono_degree(m) == 0;
    if (a != 1 || unit) {
      os << a.get_str();
      if (!unit) os << "*";
    }
    bool sep = false;
    for (int i = 0; i < n_; ++i) {
      if (!m[i]) continue;
      if (sep) os << "*";
      os << "e" << (i + 1);
      if (m[i] > 1) os << "^" << int(m[i]);
      sep = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

static bool mono_divides(const Monomial& a, const Monomial& b) {
  for (int k = 0; k < kMaxVars; ++k)
    if (a[k] > b[k]) return false;
  return true;
}

std::optional<Polynomial> exact_div(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  int n = std::max(f.rank(), g.rank());
  Polynomial p = f, q(n);
  const Monomial& lg = g.leading_monomial();
  const mpq_class& cg = g.leading_coeff();
  // a single divisor is a Groebner basis, so a stuck leading term means f is not in gR
  while (!p.is_zero()) {
    Monomial lp = p.leading_monomial();
    if (!mono_divides(lg, lp)) return std::nullopt;
    Monomial m;
    for (int k = 0; k < kMaxVars; ++k) m[k] = lp[k] - lg[k];
    mpq_class c = p.leading_coeff() / cg;
    q.add_term(m, c);
    for (auto& [mg, cgg] : g.terms()) {
      Monomial mm;
      for (int k = 0; k < kMaxVars; ++k) mm[k] = mg[k] + m[k];
      p.add_term(mm, -c * cgg);
    }
  }
  return q;
}

Polynomial exact_div_or_throw(const Polynomial& f, const Polynomial& g) {
  auto q = exact_div(f, g);
  if (!q) throw NotDivisible();
  return *q;
}

bool divisible_by_power(const Polynomial& f, const Polynomial& alpha, int k) {
  Polynomial p = f;
  for (int i = 0; i < k && !p.is_zero(); ++i) {
    auto q = exact_div(p, alpha);
    if (!q) return false;
    p = std::move(*q);
  }
  return true;
}

int multiplicity(const Polynomial& f, const Polynomial& alpha) {
  if (f.is_zero()) throw std::domain_error("multiplicity of zero");
  int k = 0;
  Polynomial p = f;
  while (auto q = exact_div(p, alpha)) {
    p = std::move(*q);
    ++k;
  }
  return k;
}

Polynomial demazure(int i, int j, const Polynomial& f) {
  return exact_div_or_throw(f - f.swapped(i, j), Polynomial::root(f.rank(), i, j));
}

Polynomial wp(int i, int j, const Polynomial& f) { return (f + f.swapped(i, j)).scaled(mpq_class(1, 2)); }

Polynomial random_poly(int n, int deg, int nterms, std::mt19937_64& rng, int cmax) {
  Polynomial p(n);
  std::uniform_int_distribution<int> var(0, n - 1), coef(-cmax, cmax);
  for (int t = 0; t < nterms; ++t) {
    Monomial m{};
    for (int d = 0; d < deg; ++d) ++m[var(rng)];
    p.add_term(m, coef(rng));
  }
  return p;
}

RationalFn::RationalFn(Polynomial num, std::vector<RootFactor> den) : num_(std::move(num)) {
  for (auto f : den) {
    if (f.mult <= 0) continue;
    if (f.i > f.j) {
      std::swap(f.i, f.j);
      if (f.mult % 2) num_ = -num_;
    }
    auto it = std::find_if(den_.begin(), den_.end(), [&](const RootFactor& g) { return g.i == f.i && g.j == f.j; });
    if (it == den_.end())
      den_.push_back(f);
    else
      it->mult += f.mult;
  }
  std::sort(den_.begin(), den_.end(), [](auto& a, auto& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  reduce();
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  int n = num_.rank();
  for (auto& f : den_) {
    Polynomial r = Polynomial::root(n, f.i, f.j);
    while (f.mult > 0) {
      auto q = exact_div(num_, r);
      if (!q) break;
      num_ = std::move(*q);
      --f.mult;
    }
  }
  std::erase_if(den_, [](const RootFactor& f) { return f.mult == 0; });
}

Polynomial RationalFn::denominator() const {
  int n = num_.rank();
  Polynomial d = Polynomial::constant(n, 1);
  for (auto& f : den_) d *= Polynomial::root(n, f.i, f.j).pow(f.mult);
  return d;
}

std::string RationalFn::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ")/(";
  bool first = true;
  for (auto& f : den_) {
    if (!first) os << "*";
    first = false;
    os << "(e" << f.i << " - e" << f.j << ")";
    if (f.mult > 1) os << "^" << f.mult;
  }
  os << ")";
  return os.str();
}

bool RationalFn::operator==(const RationalFn& o) const {
  return num_ * o.denominator() == o.num_ * denominator();
}

GradedRank GradedRank::monomial(int exp, std::int64_t c) {
  GradedRank r;
  if (c < 0) throw std::invalid_argument("negative rank coefficient");
  if (c) r.c_[exp] = c;
  return r;
}

std::int64_t GradedRank::at(int exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? 0 : it->second;
}

std::int64_t GradedRank::total() const {
  std::int64_t s = 0;
  for (auto& [e, c] : c_) s += c;
  return s;
}

GradedRank& GradedRank::operator+=(const GradedRank& o) {
  for (auto& [e, c] : o.c_) c_[e] += c;
  return *this;
}

GradedRank GradedRank::shifted(int k) const {
  GradedRank r;
  for (auto& [e, c] : c_) r.c_[e + k] = c;
  return r;
}

std::string GradedRank::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    auto [e, c] = *it;
    if (!first) os << "+";
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c;
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

void to_json(nlohmann::json& j, const Polynomial& p) {
  j = nlohmann::json::object();
  j["n"] = p.rank();
  auto terms = nlohmann::json::array();
  for (auto& [m, c] : p.terms()) {
    std::vector<int> exp(m.begin(), m.begin() + p.rank());
    terms.push_back({{"exp", exp}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  j["terms"] = terms;
}

void from_json(const nlohmann::json& j, Polynomial& p) {
  int n = j.at("n").get<int>();
  p = Polynomial(n);
  for (auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<int>>();
    if (static_cast<int>(exp.size()) != n) throw std::invalid_argument("exponent length mismatch");
    Monomial m{};
    for (int i = 0; i < n; ++i) {
      if (exp[i] < 0 || exp[i] > 255) throw std::invalid_argument("exponent out of range");
      m[i] = static_cast<std::uint8_t>(exp[i]);
    }
    mpq_class c(mpz_class(t.at("num").get<std::string>()), mpz_class(t.at("den").get<std::string>()));
    c.canonicalize();
    p.add_term(m, c);
  }
}

void to_json(nlohmann::json& j, const GradedRank& r) {
  j = nlohmann::json::object();
  for (auto& [e, c] : r.coeffs()) j[std::to_string(e)] = c;
}

void from_json(const nlohmann::json& j, GradedRank& r) {
  r = GradedRank();
  for (auto& [k, v] : j.items()) r += GradedRank::monomial(std::stoi(k), v.get<std::int64_t>());
}

}  // namespace bsm
