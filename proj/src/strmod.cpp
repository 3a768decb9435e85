#include "bsm/strmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bsm {

int compare_lex(const Monomial& a, const Monomial& b, int nvars) {
  for (int v = nvars - 1; v >= 0; --v)
    if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
  return 0;
}

int compare_keys(const ModKey& a, const ModKey& b, const ModOrder& o) {
  if (a.gen != b.gen) return o.priority[a.gen] > o.priority[b.gen] ? 1 : -1;
  return compare_lex(a.mono, b.mono, o.nvars);
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

static Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return r;
}

static Monomial mono_quo(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint8_t>(a[i] - b[i]);
  return r;
}

static Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

ModElem ModElem::gen(OrderPtr o, int g, const Polynomial& coeff) {
  std::vector<Term> t;
  for (auto& [m, c] : coeff.terms()) t.push_back({{g, m}, c});
  return from_terms(std::move(o), std::move(t));
}

ModElem ModElem::from_coords(OrderPtr o, const std::vector<Polynomial>& coords) {
  if (static_cast<int>(coords.size()) != o->ngens()) throw std::invalid_argument("from_coords: size");
  std::vector<Term> t;
  for (int g = 0; g < o->ngens(); ++g)
    for (auto& [m, c] : coords[g].terms()) t.push_back({{g, m}, c});
  return from_terms(std::move(o), std::move(t));
}

ModElem ModElem::from_terms(OrderPtr o, std::vector<Term> terms) {
  ModElem e(std::move(o));
  e.terms_ = std::move(terms);
  e.normalize();
  return e;
}

void ModElem::normalize() {
  const ModOrder& o = *ord_;
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return compare_keys(a.first, b.first, o) > 0; });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(t);
    if (out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

std::vector<Polynomial> ModElem::coords() const {
  std::vector<Polynomial> c(ord_->ngens(), Polynomial(ord_->nvars));
  for (auto& [k, v] : terms_) c[k.gen].add_term(k.mono, v);
  return c;
}

bool ModElem::is_homogeneous() const {
  for (auto& [k, v] : terms_)
    if (2 * mono_degree(k.mono) + ord_->shift[k.gen] != 2 * mono_degree(lead().first.mono) + ord_->shift[lead().first.gen])
      return false;
  return true;
}

int ModElem::degree() const {
  if (is_zero()) throw std::logic_error("degree of zero element");
  if (!is_homogeneous()) throw std::logic_error("inhomogeneous element");
  return 2 * mono_degree(lead().first.mono) + ord_->shift[lead().first.gen];
}

// a + s*b for sorted term lists
static std::vector<ModElem::Term> merge(const std::vector<ModElem::Term>& a, const std::vector<ModElem::Term>& b,
                                        const mpq_class& s, const ModOrder& o) {
  std::vector<ModElem::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : compare_keys(a[i].first, b[j].first, o);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].first, s * b[j].second});
      ++j;
    } else {
      mpq_class v = a[i].second + s * b[j].second;
      if (v != 0) out.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return out;
}

ModElem ModElem::operator+(const ModElem& o) const {
  const OrderPtr& ord = ord_ ? ord_ : o.ord_;
  ModElem r(ord);
  r.terms_ = merge(terms_, o.terms_, 1, *ord);
  return r;
}

ModElem ModElem::operator-(const ModElem& o) const {
  const OrderPtr& ord = ord_ ? ord_ : o.ord_;
  ModElem r(ord);
  r.terms_ = merge(terms_, o.terms_, -1, *ord);
  return r;
}

ModElem ModElem::scaled(const mpq_class& c) const {
  ModElem r(ord_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

ModElem ModElem::times(const Monomial& m, const mpq_class& c) const {
  // monomial multiplication preserves the POT order
  ModElem r(ord_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (auto& [k, v] : terms_) r.terms_.push_back({{k.gen, mono_mul(k.mono, m)}, v * c});
  return r;
}

ModElem ModElem::times(const Polynomial& f) const {
  std::vector<Term> t;
  for (auto& [m, c] : f.terms())
    for (auto& [k, v] : terms_) t.push_back({{k.gen, mono_mul(k.mono, m)}, v * c});
  return from_terms(ord_, std::move(t));
}

ModElem ModElem::reordered(OrderPtr o) const { return from_terms(std::move(o), terms_); }

std::string ModElem::str() const {
  if (is_zero()) return "0";
  auto c = coords();
  std::ostringstream os;
  bool first = true;
  // print in generator priority order, largest first
  std::vector<int> gens(ord_->ngens());
  std::iota(gens.begin(), gens.end(), 0);
  std::sort(gens.begin(), gens.end(), [&](int a, int b) { return ord_->priority[a] > ord_->priority[b]; });
  for (int g : gens) {
    if (c[g].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string name = g < static_cast<int>(ord_->names.size()) ? ord_->names[g] : "g" + std::to_string(g + 1);
    os << "(" << c[g].str() << ")*" << name;
  }
  return os.str();
}

Reduction reduce(const ModElem& f, const std::vector<ModElem>& G) {
  const OrderPtr& o = f.order();
  Reduction res;
  int nv = o ? o->nvars : 0;
  res.quotients.assign(G.size(), Polynomial(nv));
  ModElem p = f;
  std::vector<ModElem::Term> rem;
  while (!p.is_zero()) {
    const auto [k, c] = p.lead();
    bool hit = false;
    for (std::size_t gi = 0; gi < G.size(); ++gi) {
      if (G[gi].is_zero()) continue;
      const auto& [gk, gc] = G[gi].lead();
      if (gk.gen != k.gen || !mono_divides(gk.mono, k.mono)) continue;
      Monomial q = mono_quo(k.mono, gk.mono);
      mpq_class s = c / gc;
      p = p - G[gi].times(q, s);
      res.quotients[gi].add_term(q, s);
      hit = true;
      break;
    }
    if (!hit) {
      rem.push_back({k, c});
      p = p - ModElem::from_terms(o, {{k, c}});
    }
  }
  res.remainder = ModElem::from_terms(o, std::move(rem));
  return res;
}

ModElem normal_form(const ModElem& f, const std::vector<ModElem>& G) { return reduce(f, G).remainder; }

static ModElem monic(const ModElem& f) { return f.scaled(1 / f.lead().second); }

static ModElem spoly(const ModElem& a, const ModElem& b) {
  const auto& [ka, ca] = a.lead();
  const auto& [kb, cb] = b.lead();
  Monomial l = mono_lcm(ka.mono, kb.mono);
  return a.times(mono_quo(l, ka.mono), 1 / ca) - b.times(mono_quo(l, kb.mono), 1 / cb);
}

std::vector<ModElem> buchberger(const std::vector<ModElem>& gens) {
  std::vector<ModElem> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(monic(g));
  struct Pair {
    int deg;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto& ki = G[i].lead().first;
      const auto& kj = G[j].lead().first;
      if (ki.gen != kj.gen) continue;
      pairs.push_back({mono_degree(mono_lcm(ki.mono, kj.mono)), i, j});
    }
  };
  for (std::size_t j = 0; j < G.size(); ++j) add_pairs(j);
  while (!pairs.empty()) {
    // normal strategy: smallest lcm degree first, then oldest
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      return std::tie(a.deg, a.j, a.i) < std::tie(b.deg, b.j, b.i);
    });
    Pair pr = *it;
    pairs.erase(it);
    // chain criterion: some lm_k divides the lcm and both other pairs are gone
    const auto& ki = G[pr.i].lead().first;
    const auto& kj = G[pr.j].lead().first;
    Monomial l = mono_lcm(ki.mono, kj.mono);
    bool skip = false;
    for (std::size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      const auto& kk = G[k].lead().first;
      if (kk.gen != ki.gen || !mono_divides(kk.mono, l)) continue;
      auto pending = [&](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return std::any_of(pairs.begin(), pairs.end(), [&](const Pair& q) { return q.i == a && q.j == b; });
      };
      if (!pending(pr.i, k) && !pending(pr.j, k)) skip = true;
    }
    if (skip) continue;
    ModElem r = normal_form(spoly(G[pr.i], G[pr.j]), G);
    if (r.is_zero()) continue;
    G.push_back(monic(r));
    add_pairs(G.size() - 1);
  }
  return G;
}

bool is_groebner(const std::vector<ModElem>& G) {
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (G[i].is_zero() || G[j].is_zero()) continue;
      if (G[i].lead().first.gen != G[j].lead().first.gen) continue;
      if (!normal_form(spoly(G[i], G[j]), G).is_zero()) return false;
    }
  return true;
}

std::vector<ModKey> leading_keys(const std::vector<ModElem>& G) {
  std::vector<ModKey> out;
  for (auto& g : G)
    if (!g.is_zero()) out.push_back(g.lead().first);
  return out;
}

bool same_submodule(const std::vector<ModElem>& A, const std::vector<ModElem>& B) {
  auto GA = buchberger(A), GB = buchberger(B);
  for (auto& b : B)
    if (!normal_form(b, GA).is_zero()) return false;
  for (auto& a : A)
    if (!normal_form(a, GB).is_zero()) return false;
  return true;
}

std::vector<ModElem> kernel(const std::vector<ModElem>& images, OrderPtr source) {
  if (static_cast<int>(images.size()) != source->ngens()) throw std::invalid_argument("kernel: size");
  OrderPtr target;
  for (auto& im : images)
    if (im.order()) target = im.order();
  if (!target) {
    // everything maps to zero
    std::vector<ModElem> out;
    for (int g = 0; g < source->ngens(); ++g) out.push_back(ModElem::gen(source, g, Polynomial::constant(source->nvars, 1)));
    return out;
  }
  int l = target->ngens(), k = source->ngens();
  auto both = std::make_shared<ModOrder>();
  both->nvars = target->nvars;
  int smax = k ? *std::max_element(source->priority.begin(), source->priority.end()) : 0;
  int tmin = *std::min_element(target->priority.begin(), target->priority.end());
  for (int g = 0; g < l; ++g) {
    both->priority.push_back(target->priority[g] - tmin + smax + 1);
    both->shift.push_back(target->shift[g]);
  }
  for (int g = 0; g < k; ++g) {
    both->priority.push_back(source->priority[g]);
    both->shift.push_back(source->shift[g]);
  }
  std::vector<ModElem> h;
  for (int g = 0; g < k; ++g) {
    std::vector<ModElem::Term> t;
    for (auto& [key, c] : images[g].terms()) t.push_back({key, c});
    Monomial one{};
    t.push_back({{l + g, one}, 1});
    h.push_back(ModElem::from_terms(both, std::move(t)));
  }
  std::vector<ModElem> out;
  for (auto& g : buchberger(h)) {
    if (g.lead().first.gen < l) continue;
    std::vector<ModElem::Term> t;
    for (auto& [key, c] : g.terms()) t.push_back({{key.gen - l, key.mono}, c});
    out.push_back(ModElem::from_terms(source, std::move(t)));
  }
  return out;
}

std::vector<ModElem> minimize(const std::vector<ModElem>& gens) {
  std::vector<ModElem> sorted;
  for (auto& g : gens)
    if (!g.is_zero()) sorted.push_back(g);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ModElem& a, const ModElem& b) { return a.degree() < b.degree(); });
  std::vector<ModElem> kept, gb;
  for (auto& g : sorted) {
    if (!kept.empty() && normal_form(g, gb).is_zero()) continue;
    kept.push_back(g);
    gb = buchberger(kept);
  }
  return kept;
}

GradedRank rank_of_degrees(const std::vector<ModElem>& gens) {
  GradedRank r;
  for (auto& g : gens) r += GradedRank::monomial(-g.degree());
  return r;
}

bool Resolution::minimal() const {
  for (std::size_t i = 1; i < maps.size(); ++i)
    for (auto& g : maps[i])
      for (auto& [k, c] : g.terms())
        if (mono_degree(k.mono) == 0) return false;
  return true;
}

Resolution free_resolution(const std::vector<ModElem>& gens, int max_len, std::mt19937_64* shuffle) {
  Resolution res;
  auto cur = minimize(gens);
  res.ranks.push_back(rank_of_degrees(cur));
  res.maps.push_back(cur);
  if (cur.empty()) {
    res.exact = true;
    res.pd = 0;
    return res;
  }
  int nv = cur[0].order()->nvars;
  for (int i = 1; i <= max_len; ++i) {
    auto src = std::make_shared<ModOrder>();
    src->nvars = nv;
    for (std::size_t g = 0; g < cur.size(); ++g) {
      src->priority.push_back(static_cast<int>(g));
      src->shift.push_back(cur[g].degree());
      src->names.push_back("f" + std::to_string(i - 1) + "_" + std::to_string(g + 1));
    }
    if (shuffle) std::shuffle(src->priority.begin(), src->priority.end(), *shuffle);
    auto K = kernel(cur, src);
    if (K.empty()) {
      res.exact = true;
      res.pd = i - 1;
      return res;
    }
    cur = minimize(K);
    res.ranks.push_back(rank_of_degrees(cur));
    res.maps.push_back(cur);
  }
  return res;
}

static int linear_rank_rows(std::vector<std::vector<mpq_class>> A) {
  int rank = 0, n = A.empty() ? 0 : static_cast<int>(A[0].size());
  for (int col = 0; col < n && rank < static_cast<int>(A.size()); ++col) {
    int piv = rank;
    while (piv < static_cast<int>(A.size()) && A[piv][col] == 0) ++piv;
    if (piv == static_cast<int>(A.size())) continue;
    std::swap(A[piv], A[rank]);
    for (int r = rank + 1; r < static_cast<int>(A.size()); ++r) {
      mpq_class f = A[r][col] / A[rank][col];
      for (int k = col; k < n; ++k) A[r][k] -= f * A[rank][k];
    }
    ++rank;
  }
  return rank;
}

CoordChange coordinate_change(const std::vector<Polynomial>& x) {
  if (x.empty()) throw std::invalid_argument("coordinate_change: no forms");
  CoordChange cc;
  cc.n = x[0].rank();
  cc.nx = static_cast<int>(x.size());
  int n = cc.n;
  auto row_of = [&](const Polynomial& f) {
    if (f.degree() != 1 || !f.is_homogeneous()) throw std::invalid_argument("coordinate_change: not a linear form");
    std::vector<mpq_class> r(n);
    for (int i = 1; i <= n; ++i) r[i - 1] = f.linear_coeff(i);
    return r;
  };
  std::vector<Polynomial> forms;
  for (auto& f : x) {
    cc.A.push_back(row_of(f));
    forms.push_back(f);
  }
  if (linear_rank_rows(cc.A) != cc.nx) throw DependentRoots();
  for (int k = 1; k <= n && static_cast<int>(cc.A.size()) < n; ++k) {
    auto trial = cc.A;
    std::vector<mpq_class> ek(n);
    ek[k - 1] = 1;
    trial.push_back(ek);
    if (linear_rank_rows(trial) == static_cast<int>(trial.size())) cc.A = trial;
  }
  // Gauss-Jordan inverse
  std::vector<std::vector<mpq_class>> M = cc.A, I(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (M[piv][col] == 0) ++piv;
    std::swap(M[piv], M[col]);
    std::swap(I[piv], I[col]);
    mpq_class d = M[col][col];
    for (int k = 0; k < n; ++k) M[col][k] /= d, I[col][k] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      mpq_class f = M[r][col];
      for (int k = 0; k < n; ++k) M[r][k] -= f * M[col][k], I[r][k] -= f * I[col][k];
    }
  }
  cc.Ainv = I;
  for (int r = 0; r < n; ++r) cc.to_old_subs.push_back(Polynomial::linear(n, cc.A[r]));
  for (int c = 0; c < n; ++c) cc.to_new_subs.push_back(Polynomial::linear(n, cc.Ainv[c]));
  return cc;
}

// ---------------------------------------------------------------- string modules

StringModule::StringModule(int n_, int extra_) : n(n_), extra(extra_) {
  if (n < 2) throw std::invalid_argument("string module needs |x| >= 2");
  if (n + extra > kMaxVars) throw std::invalid_argument("too many variables");
  auto amb = std::make_shared<ModOrder>();
  amb->nvars = nvars();
  for (int g = 0; g < n - 1; ++g) {
    amb->priority.push_back(g);
    amb->shift.push_back(0);
    amb->names.push_back("e" + std::to_string(g + 1));
  }
  ambient = amb;
  auto pr = std::make_shared<ModOrder>(), du = std::make_shared<ModOrder>();
  pr->nvars = du->nvars = nvars();
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i < j; ++i) {
      pair_index.push_back({i, j});
      int prio = j * (n + 1) + (n - i);
      pr->priority.push_back(prio);
      du->priority.push_back(prio);
      pr->shift.push_back(4);
      du->shift.push_back(-4);
      std::string s = std::to_string(i) + "," + std::to_string(j);
      pr->names.push_back("e" + s);
      du->names.push_back("e*" + s);
    }
  pairs = pr;
  dual = du;
  auto ep = std::make_shared<ModOrder>();
  ep->nvars = nvars();
  for (int h = 1; h <= n; ++h) {
    ep->priority.push_back(h);
    ep->shift.push_back(-2);
    ep->names.push_back("eps" + std::to_string(h));
  }
  eps = ep;
}

int StringModule::pair_gen(int i, int j) const {
  for (std::size_t g = 0; g < pair_index.size(); ++g)
    if (pair_index[g] == std::make_pair(i, j)) return static_cast<int>(g);
  throw std::out_of_range("pair_gen");
}

Polynomial StringModule::x(int i) const { return Polynomial::var(nvars(), i); }

ModElem StringModule::p(int i, int j) const {
  if (!(1 <= i && i < j && j <= n)) throw std::out_of_range("p(i,j)");
  ModElem r(ambient);
  for (int g = i; g < j; ++g) r = r + ModElem::gen(ambient, g - 1, x(i) * x(j));
  return r;
}

std::vector<ModElem> StringModule::p_gens() const {
  std::vector<ModElem> out;
  for (auto& [i, j] : pair_index) out.push_back(p(i, j));
  return out;
}

static bool divisible(const Polynomial& f, const Polynomial& v) { return f.is_zero() || exact_div(f, v).has_value(); }

bool StringModule::member(const ModElem& f) const {
  auto c = f.coords();
  if (!divisible(c[0], x(1))) return false;
  if (!divisible(c[n - 2], x(n))) return false;
  for (int i = 2; i <= n - 1; ++i)
    if (!divisible(c[i - 1] - c[i - 2], x(i))) return false;
  return true;
}

std::vector<ModElem> StringModule::phi_images() const { return p_gens(); }

ModElem StringModule::q(int i, int j, int k) const {
  return ModElem::gen(pairs, pair_gen(i, j), x(k)) + ModElem::gen(pairs, pair_gen(j, k), x(i)) -
         ModElem::gen(pairs, pair_gen(i, k), x(j));
}

std::vector<ModElem> StringModule::q_gens() const {
  std::vector<ModElem> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back(q(i, j, k));
  return out;
}

ModElem StringModule::theta(int h) const {
  ModElem r(dual);
  for (int i = 1; i < h; ++i) r = r + ModElem::gen(dual, pair_gen(i, h), x(i));
  for (int j = h + 1; j <= n; ++j) r = r - ModElem::gen(dual, pair_gen(h, j), x(j));
  return r;
}

std::vector<ModElem> StringModule::thetas() const {
  std::vector<ModElem> out;
  for (int h = 1; h <= n; ++h) out.push_back(theta(h));
  return out;
}

ModElem StringModule::w() const {
  ModElem r(eps);
  for (int h = 1; h <= n; ++h) r = r + ModElem::gen(eps, h - 1, x(h));
  return r;
}

Polynomial StringModule::thetah_relation(const ModElem& t, int i, int j, int k) const {
  auto c = t.coords();
  return x(k) * c[pair_gen(i, j)] + x(i) * c[pair_gen(j, k)] - x(j) * c[pair_gen(i, k)];
}

std::vector<ModElem> StringModule::dual_kernel() const {
  std::vector<std::array<int, 3>> triples;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});
  auto tgt = std::make_shared<ModOrder>();
  tgt->nvars = nvars();
  for (std::size_t t = 0; t < triples.size(); ++t) {
    tgt->priority.push_back(static_cast<int>(t));
    tgt->shift.push_back(-2);
  }
  std::vector<ModElem> images;
  for (auto& [a, b] : pair_index) {
    ModElem im(tgt);
    for (std::size_t t = 0; t < triples.size(); ++t) {
      auto [i, j, k] = triples[t];
      int ti = static_cast<int>(t);
      if (a == i && b == j) im = im + ModElem::gen(tgt, ti, x(k));
      if (a == j && b == k) im = im + ModElem::gen(tgt, ti, x(i));
      if (a == i && b == k) im = im - ModElem::gen(tgt, ti, x(j));
    }
    images.push_back(im);
  }
  return kernel(images, dual);
}

std::vector<ModElem> StringModule::psi_kernel() const { return kernel(thetas(), eps); }

bool StReport::ok(bool with_dual) const {
  bool base = p_groebner && random_members_reduce && q_generate_kernel && q_groebner && pd_st == n - 2 && minimal;
  if (!with_dual || n < 3) return base;
  return base && theta_relations && theta_groebner && theta_is_dual && psi_w_zero && psi_kernel_is_w &&
         pd_dual == 1;
}

StReport st_check(int n, int extra, std::mt19937_64& rng, bool with_dual) {
  StringModule S(n, extra);
  StReport r;
  r.n = n;
  r.extra = extra;
  auto P = S.p_gens();
  auto completed = buchberger(P);
  bool no_new = true;
  for (auto& g : completed) {
    auto k = g.lead().first;
    bool covered = std::any_of(P.begin(), P.end(), [&](const ModElem& p) {
      return p.lead().first.gen == k.gen && mono_divides(p.lead().first.mono, k.mono);
    });
    no_new = no_new && covered;
  }
  r.p_groebner = no_new && is_groebner(P);

  // members built from the generators reduce to zero; random elements agree
  // with the defining congruences
  int nv = S.nvars();
  bool ok = true;
  std::uniform_int_distribution<int> deg(0, 2);
  for (int trial = 0; trial < 6; ++trial) {
    ModElem f(S.ambient);
    for (auto& p : P) f = f + p.times(random_poly(nv, deg(rng), 2, rng, 3));
    ok = ok && S.member(f) && normal_form(f, P).is_zero();
    std::vector<Polynomial> c;
    for (int g = 0; g < n - 1; ++g) c.push_back(random_poly(nv, 2, 2, rng, 2));
    ModElem h = ModElem::from_coords(S.ambient, c);
    ok = ok && (S.member(h) == normal_form(h, P).is_zero());
  }
  r.random_members_reduce = ok;

  auto K = kernel(S.phi_images(), S.pairs);
  auto Q = S.q_gens();
  r.q_generate_kernel = K.empty() ? Q.empty() : same_submodule(K, Q);
  r.q_groebner = is_groebner(Q);

  auto res = free_resolution(P);
  r.pd_st = res.exact ? res.pd : -1;
  r.st_ranks = res.ranks;
  r.minimal = res.minimal();

  if (with_dual && n >= 3) {
    auto T = S.thetas();
    bool rel = true;
    for (auto& t : T)
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (int k = j + 1; k <= n; ++k) rel = rel && S.thetah_relation(t, i, j, k).is_zero();
    r.theta_relations = rel;
    r.theta_groebner = is_groebner(T);
    r.theta_is_dual = same_submodule(T, S.dual_kernel());
    ModElem sum(S.dual);
    for (int h = 1; h <= n; ++h) sum = sum + T[h - 1].times(S.x(h));
    r.psi_w_zero = sum.is_zero();
    r.psi_kernel_is_w = same_submodule(S.psi_kernel(), {S.w()});
    auto dres = free_resolution(T);
    r.pd_dual = dres.exact ? dres.pd : -1;
    r.dual_ranks = dres.ranks;
    r.minimal = r.minimal && dres.minimal();
  }
  return r;
}

void to_json(nlohmann::json& j, const StReport& r) {
  j = {{"n", r.n},
       {"extra", r.extra},
       {"p_groebner", r.p_groebner},
       {"random_members_reduce", r.random_members_reduce},
       {"q_generate_kernel", r.q_generate_kernel},
       {"q_groebner", r.q_groebner},
       {"pd_st", r.pd_st},
       {"st_ranks", r.st_ranks},
       {"minimal", r.minimal}};
  if (r.n >= 3) {
    j["theta_relations"] = r.theta_relations;
    j["theta_groebner"] = r.theta_groebner;
    j["theta_is_dual"] = r.theta_is_dual;
    j["psi_w_zero"] = r.psi_w_zero;
    j["psi_kernel_is_w"] = r.psi_kernel_is_w;
    j["pd_dual"] = r.pd_dual;
    j["dual_ranks"] = r.dual_ranks;
  }
}

}  // namespace bsm
