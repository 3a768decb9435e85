#include "bsm/coxeter.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace bsm {

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  std::vector<int> s = img_;
  std::sort(s.begin(), s.end());
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i] != i + 1) throw std::invalid_argument("not a permutation");
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::transposition(int n, int i, int j) {
  Permutation p = identity(n);
  std::swap(p.img_[i - 1], p.img_[j - 1]);
  return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Permutation p = identity(n);
  for (auto& c : cycles)
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] < 1 || c[k] > n) throw std::invalid_argument("cycle entry out of range");
      p.img_[c[k] - 1] = c[(k + 1) % c.size()];
    }
  return Permutation(p.img_);
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("permutation rank mismatch");
  std::vector<int> r(a.rank());
  for (int i = 0; i < a.rank(); ++i) r[i] = a.img_[b.img_[i] - 1];
  Permutation p;
  p.img_ = std::move(r);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> r(rank());
  for (int i = 0; i < rank(); ++i) r[img_[i] - 1] = i + 1;
  Permutation p;
  p.img_ = std::move(r);
  return p;
}

int Permutation::length() const {
  int l = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (img_[i] > img_[j]) ++l;
  return l;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < rank(); ++i)
    if (img_[i] != i + 1) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(rank() + 1, false);
  for (int i = 1; i <= rank(); ++i) {
    if (seen[i] || (*this)(i) == i) continue;
    std::vector<int> c;
    for (int j = i; !seen[j]; j = (*this)(j)) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Polynomial Permutation::act(const Polynomial& f) const {
  if (f.rank() != rank() && !f.is_zero()) throw std::invalid_argument("act: rank mismatch");
  return f.is_zero() ? Polynomial(rank()) : f.permute(img_);
}

std::string Permutation::str() const {
  auto cs = cycles();
  if (cs.empty()) return "1";
  std::ostringstream os;
  for (auto& c : cs) {
    os << "(";
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k];
    os << ")";
  }
  return os.str();
}

Reflection::Reflection(int n_, int a, int b) : n(n_), i(std::min(a, b)), j(std::max(a, b)) {
  if (i < 1 || j > n || i == j) throw std::invalid_argument("invalid reflection");
}

std::string Reflection::str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

Polynomial root_of(const Reflection& t) { return t.root(); }

Reflection conjugate_reflection(const Permutation& w, const Reflection& t) {
  if (w.rank() != t.n) throw std::invalid_argument("conjugate_reflection: rank mismatch");
  return Reflection(t.n, w(t.i), w(t.j));
}

Polynomial act(const Permutation& w, const Polynomial& f) { return w.act(f); }
Polynomial demazure(const Reflection& t, const Polynomial& f) { return demazure(t.i, t.j, f); }
Polynomial wp(const Reflection& t, const Polynomial& f) { return wp(t.i, t.j, f); }

ReflExpr::ReflExpr(int n_, std::vector<Reflection> e) : n(n_), entries(std::move(e)) {
  for (auto& r : entries)
    if (r.n != n) throw std::invalid_argument("reflection rank mismatch in expression");
}

ReflExpr ReflExpr::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Reflection> e;
  for (auto [a, b] : pairs) e.emplace_back(n, a, b);
  return ReflExpr(n, std::move(e));
}

std::vector<int> ReflExpr::M(const Reflection& p) const {
  std::vector<int> r;
  for (int i = 1; i <= size(); ++i)
    if ((*this)[i] == p) r.push_back(i);
  return r;
}

std::vector<Reflection> ReflExpr::support() const {
  std::vector<Reflection> r;
  for (auto& t : entries)
    if (std::find(r.begin(), r.end(), t) == r.end()) r.push_back(t);
  return r;
}

std::string ReflExpr::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << "(" << entries[i].i << entries[i].j << ")";
  os << ")";
  return os.str();
}

ReflExpr shift(const ReflExpr& t, int k) { return t.size() ? ReflExpr(t.n, seq::shift(t.entries, k)) : t; }
ReflExpr reverse(const ReflExpr& t) { return ReflExpr(t.n, seq::reverse(t.entries)); }
ReflExpr shift1(const ReflExpr& t, int k) { return ReflExpr(t.n, seq::shift1(t.entries, k)); }
ReflExpr ddot(const ReflExpr& t) { return ReflExpr(t.n, seq::ddot(t.entries)); }
ReflExpr concat(const ReflExpr& a, const ReflExpr& b) {
  if (a.n != b.n) throw std::invalid_argument("concat: rank mismatch");
  return ReflExpr(a.n, seq::concat(a.entries, b.entries));
}
ReflExpr truncate(const ReflExpr& t) { return ReflExpr(t.n, seq::truncate(t.entries)); }

ReflExpr fold_expr(const ReflExpr& t, std::vector<int> X) {
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  if (X.empty()) return t;
  for (int x : X)
    if (x < 1 || x > t.size()) throw std::out_of_range("fold_expr: position");
  const Reflection p = t[X[0]];
  for (int x : X)
    if (t[x] != p) throw std::invalid_argument("fold_expr: positions carry different reflections");
  Permutation pp = p.perm();
  ReflExpr r = t;
  for (std::size_t a = 0; a < X.size(); a += 2) {
    int lo = X[a], hi = a + 1 < X.size() ? X[a + 1] : t.size() + 1;
    for (int i = lo + 1; i < hi; ++i) r.entries[i - 1] = conjugate_reflection(pp, t[i]);
  }
  return r;
}

static void check_index_seq(int n, const std::vector<int>& i, std::size_t min_len) {
  if (i.size() < min_len) throw std::invalid_argument("index sequence too short");
  std::set<int> s(i.begin(), i.end());
  if (s.size() != i.size()) throw std::invalid_argument("repeated entries in index sequence");
  for (int x : i)
    if (x < 1 || x > n) throw std::invalid_argument("index out of range");
}

ReflExpr make_a(int n, const std::vector<int>& i) {
  check_index_seq(n, i, 1);
  std::vector<Reflection> e;
  for (std::size_t k = 1; k < i.size(); ++k) e.emplace_back(n, i[0], i[k]);
  return ReflExpr(n, e);
}

ReflExpr make_b(int n, const std::vector<int>& i) {
  check_index_seq(n, i, 1);
  std::vector<Reflection> e;
  for (std::size_t k = 1; k < i.size(); ++k) e.emplace_back(n, i[k - 1], i[k]);
  return ReflExpr(n, e);
}

ReflExpr make_c(int n, const std::vector<int>& i) {
  check_index_seq(n, i, 2);
  ReflExpr b = make_b(n, i);
  b.entries.emplace_back(n, i.back(), i.front());
  return b;
}

ReflExpr make_D(int n, const std::vector<int>& i) {
  check_index_seq(n, i, 2);
  return concat(make_a(n, i), make_c(n, i));
}

ReflExpr make_sequence(char kind, int n, const std::vector<int>& i) {
  switch (kind) {
    case 'a': return make_a(n, i);
    case 'b': return make_b(n, i);
    case 'c': return make_c(n, i);
    case 'D': return make_D(n, i);
  }
  throw std::invalid_argument("unknown sequence kind");
}

void to_json(nlohmann::json& j, const Permutation& p) { j = p.images(); }
void from_json(const nlohmann::json& j, Permutation& p) { p = Permutation(j.get<std::vector<int>>()); }

void to_json(nlohmann::json& j, const ReflExpr& t) {
  auto e = nlohmann::json::array();
  for (auto& r : t.entries) e.push_back({r.i, r.j});
  j = {{"n", t.n}, {"entries", e}};
}

void from_json(const nlohmann::json& j, ReflExpr& t) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (auto& e : j.at("entries")) pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  t = ReflExpr::from_pairs(n, pairs);
}

Permutation parse_perm(const std::string& s, int n) {
  if (s.empty() || s == "1" || s == "id" || s == "e") return Permutation::identity(n);
  if (s.find('(') != std::string::npos) {
    std::vector<std::vector<int>> cycles;
    std::vector<int> cur;
    std::string num;
    auto flush = [&] {
      if (!num.empty()) cur.push_back(std::stoi(num));
      num.clear();
    };
    for (char c : s) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        num += c;
      } else if (c == ')') {
        flush();
        cycles.push_back(cur);
        cur.clear();
      } else {
        flush();
      }
    }
    return Permutation::from_cycles(n, cycles);
  }
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("permutation length does not match rank");
  return Permutation(v);
}

}  // namespace bsm
