#include "bsm/locmod.hpp"

#include <algorithm>
#include <sstream>

namespace bsm {

FnOnSub::FnOnSub(SubSet domain) : dom_(std::move(domain)) {
  vals_.assign(dom_.size(), Polynomial(dom_.expr->n));
}

FnOnSub::FnOnSub(SubSet domain, std::vector<Polynomial> values) : dom_(std::move(domain)), vals_(std::move(values)) {
  if (static_cast<int>(vals_.size()) != dom_.size()) throw std::invalid_argument("FnOnSub: value count mismatch");
}

FnOnSub FnOnSub::constant(SubSet domain, const Polynomial& c) {
  FnOnSub g(std::move(domain));
  std::fill(g.vals_.begin(), g.vals_.end(), c);
  return g;
}

FnOnSub FnOnSub::indicator(SubSet domain, const std::vector<Mask>& support) {
  FnOnSub g(std::move(domain));
  for (auto b : support) g.set(b, Polynomial::constant(g.rank(), 1));
  return g;
}

FnOnSub FnOnSub::from(SubSet domain, const std::function<Polynomial(const Subexpr&)>& f) {
  FnOnSub g(std::move(domain));
  for (int k = 0; k < g.dom_.size(); ++k) g.vals_[k] = f(g.dom_.at(k));
  return g;
}

const Polynomial& FnOnSub::operator()(Mask b) const {
  int k = dom_.index_of(b);
  if (k < 0) throw std::out_of_range("subexpression " + bit_string(b, dom_.m()) + " not in domain");
  return vals_[k];
}

void FnOnSub::set(Mask b, Polynomial v) {
  int k = dom_.index_of(b);
  if (k < 0) throw std::out_of_range("subexpression not in domain");
  vals_[k] = std::move(v);
}

bool FnOnSub::is_zero() const {
  return std::all_of(vals_.begin(), vals_.end(), [](auto& p) { return p.is_zero(); });
}

std::optional<int> FnOnSub::degree() const {
  std::optional<int> d;
  for (auto& v : vals_) {
    if (v.is_zero()) continue;
    if (!v.is_homogeneous()) return std::nullopt;
    if (d && *d != 2 * v.degree()) return std::nullopt;
    d = 2 * v.degree();
  }
  return d;
}

void FnOnSub::check_same(const FnOnSub& o) const {
  if (dom_.members != o.dom_.members || *dom_.expr != *o.dom_.expr)
    throw std::invalid_argument("FnOnSub: domain mismatch");
}

FnOnSub& FnOnSub::operator+=(const FnOnSub& o) {
  check_same(o);
  for (std::size_t k = 0; k < vals_.size(); ++k) vals_[k] += o.vals_[k];
  return *this;
}

FnOnSub& FnOnSub::operator-=(const FnOnSub& o) {
  check_same(o);
  for (std::size_t k = 0; k < vals_.size(); ++k) vals_[k] -= o.vals_[k];
  return *this;
}

FnOnSub operator*(const FnOnSub& a, const FnOnSub& b) {
  a.check_same(b);
  FnOnSub r = a;
  for (std::size_t k = 0; k < r.vals_.size(); ++k) r.vals_[k] = a.vals_[k] * b.vals_[k];
  return r;
}

FnOnSub operator*(const Polynomial& c, const FnOnSub& g) {
  FnOnSub r = g;
  for (auto& v : r.vals_) v = c * v;
  return r;
}

bool FnOnSub::operator==(const FnOnSub& o) const {
  return *dom_.expr == *o.dom_.expr && dom_.members == o.dom_.members && vals_ == o.vals_;
}

FnOnSub FnOnSub::restrict_to(const SubSet& sub) const {
  FnOnSub r(sub);
  for (int k = 0; k < sub.size(); ++k) r.vals_[k] = (*this)(sub.members[k]);
  return r;
}

FnOnSub FnOnSub::extend_to(const SubSet& sup) const {
  FnOnSub r(sup);
  for (int k = 0; k < dom_.size(); ++k) r.set(dom_.members[k], vals_[k]);
  return r;
}

SubSet full_domain(const ExprPtr& t) { return enumerate(t, std::nullopt); }

FnOnSub res_tensor(const ExprPtr& t, const std::vector<Polynomial>& a) {
  int m = t->size();
  if (static_cast<int>(a.size()) != m + 1) throw std::invalid_argument("res_tensor: need m+1 factors");
  return FnOnSub::from(full_domain(t), [&](const Subexpr& e) {
    Polynomial v = Polynomial::constant(t->n, 1);
    for (int i = 1; i <= m + 1; ++i) v *= e.before(i).act(a[i - 1]);
    return v;
  });
}

static Reflection common_reflection(const Subexpr& eps, Mask X) {
  auto ps = positions(X);
  if (ps.empty()) return {};
  Reflection p = eps.conj(ps[0]);
  for (int i : ps)
    if (eps.conj(i) != p) throw std::invalid_argument("sigma: X is not inside a single M_p");
  return p;
}

Polynomial sigma(const FnOnSub& g, const Subexpr& eps, Mask X, SigmaVariant v) {
  common_reflection(eps, X);
  Polynomial s(g.rank());
  for (Mask Y = X;; Y = (Y - 1) & X) {
    if (v == SigmaVariant::Full || popcount(Y) % 2 == 0) {
      const Polynomial& val = g(eps.bits() ^ Y);
      if (rel_card(Y, X) % 2)
        s -= val;
      else
        s += val;
    }
    if (!Y) break;
  }
  return s;
}

Kind parse_kind(const std::string& s) {
  if (s == "xt" || s == "X") return Kind::Xt;
  if (s == "xw" || s == "X_w") return Kind::Xw;
  if (s == "xwphi") return Kind::XwPhi;
  if (s == "xW" || s == "xupper" || s == "X^w") return Kind::XW;
  throw std::invalid_argument("unknown membership kind: " + s);
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Xt: return "X(t)";
    case Kind::Xw: return "X_w(t)";
    case Kind::XwPhi: return "X_w(t,Phi)";
    case Kind::XW: return "X^w(t)";
  }
  return "?";
}

std::string Violation::str(int m) const {
  std::ostringstream os;
  os << "eps=" << bit_string(eps, m) << " p=" << p.str() << " X=" << set_string(X) << " exponent=" << exponent;
  return os.str();
}

static int top_position(Mask X) { return 32 - __builtin_clz(X); }

MembershipResult membership(const FnOnSub& g, Kind kind, const std::vector<Mask>& phi) {
  const SubSet& dom = g.domain();
  int m = dom.m();
  bool full = kind == Kind::Xt;
  if (full && (dom.target || dom.size() != (1 << m))) throw std::invalid_argument("X(t) membership needs the full Sub(t)");
  if (!full && !dom.target) throw std::invalid_argument(kind_name(kind) + " membership needs a target-restricted domain");
  MembershipResult res;
  if (kind == Kind::XwPhi)
    for (auto b : phi)
      if (!g(b).is_zero()) {
        res.member = false;
        res.nonzero_on_phi = b;
        return res;
      }
  for (int k = 0; k < dom.size(); ++k) {
    Subexpr eps = dom.at(k);
    for (auto& [p, M] : eps.Msets()) {
      Polynomial alpha = p.root();
      // ascending enumeration of nonempty X inside M
      for (Mask X = M & (~M + 1); X; X = (X - M) & M) {
        // one representative per orbit of the fold action on (eps, X)
        Mask free = full ? X : X & ~bit(top_position(X));
        if (eps.bits() & free) continue;
        int expo = (kind == Kind::Xt || kind == Kind::XW) ? popcount(X) : popcount(X) - 1;
        if (expo <= 0) continue;
        Polynomial s = sigma(g, eps, X, full ? SigmaVariant::Full : SigmaVariant::Even);
        ++res.checks;
        if (!divisible_by_power(s, alpha, expo)) {
          res.member = false;
          res.violation = Violation{eps.bits(), p, X, expo};
          return res;
        }
      }
    }
  }
  return res;
}

ExprPtr prefix_expr(const ExprPtr& t) { return make_expr(truncate(*t)); }

FnOnSub transfer_up(const FnOnSub& g, const ExprPtr& t, Up mode) {
  int m = t->size();
  if (m == 0 || g.expr() != truncate(*t)) throw std::invalid_argument("transfer_up: expression is not t'");
  if (g.domain().size() != (1 << (m - 1))) throw std::invalid_argument("transfer_up: needs a full domain");
  return FnOnSub::from(full_domain(t), [&](const Subexpr& e) {
    Mask prev = e.bits() & ~bit(m);
    if (mode == Up::Copy) return g(prev);
    int want = mode == Up::Nabla1 ? 1 : 0;
    if (e.at(m) != static_cast<bool>(want)) return Polynomial(t->n);
    return e.to(m) * g(prev);
  });
}

FnOnSub copy_up(const FnOnSub& g, const ExprPtr& t) { return transfer_up(g, t, Up::Copy); }
FnOnSub nabla_up(const FnOnSub& g, const ExprPtr& t, int e) { return transfer_up(g, t, e ? Up::Nabla1 : Up::Nabla0); }

FnOnSub restrict_last(const FnOnSub& g, int e) {
  const ExprPtr& t = g.domain().expr;
  int m = t->size();
  if (m == 0) throw std::invalid_argument("restrict_last on empty expression");
  ExprPtr tp = prefix_expr(t);
  return FnOnSub::from(full_domain(tp), [&](const Subexpr& d) { return g(d.bits() | (e ? bit(m) : 0)); });
}

FnOnSub divdiff_last(const FnOnSub& g, int e) {
  const ExprPtr& t = g.domain().expr;
  int m = t->size();
  if (m == 0) throw std::invalid_argument("divdiff_last on empty expression");
  ExprPtr tp = prefix_expr(t);
  return FnOnSub::from(full_domain(tp), [&](const Subexpr& d) {
    Mask with = d.bits() | (e ? bit(m) : 0), without = d.bits() | (e ? 0 : bit(m));
    Subexpr de(t, with);
    return exact_div_or_throw(g(with) - g(without), de.to(m));
  });
}

int DecoTree::label(const std::string& path) const {
  auto it = labels_.find(path);
  return it == labels_.end() ? 0 : it->second;
}

DecoTree DecoTree::random(int m, std::mt19937_64& rng) {
  DecoTree t;
  std::vector<std::string> layer{""};
  for (int d = 0; d < m; ++d) {
    std::vector<std::string> next;
    for (auto& p : layer) {
      t.set(p, static_cast<int>(rng() & 1));
      next.push_back(p + "D");
      next.push_back(p + "N");
    }
    layer = std::move(next);
  }
  return t;
}

std::string word_string(Mask L, int m) {
  std::string s;
  for (int i = 1; i <= m; ++i) s += (L & bit(i)) ? 'N' : 'D';
  return s;
}

static FnOnSub build_basis(const ExprPtr& t, const DecoTree& tree, Mask L, const std::string& path) {
  int m = t->size();
  if (m == 0) return FnOnSub::constant(full_domain(t), Polynomial::constant(t->n, 1));
  ExprPtr tp = prefix_expr(t);
  if (L & bit(m)) return nabla_up(build_basis(tp, tree, L & ~bit(m), path + "N"), t, tree.label(path));
  return copy_up(build_basis(tp, tree, L, path + "D"), t);
}

FnOnSub basis_element(const ExprPtr& t, const DecoTree& tree, Mask L) { return build_basis(t, tree, L, ""); }

std::vector<FnOnSub> basis(const ExprPtr& t, const DecoTree& tree) {
  std::vector<FnOnSub> out;
  for (Mask L = 0; L < (Mask(1) << t->size()); ++L) out.push_back(basis_element(t, tree, L));
  return out;
}

static std::map<Mask, Polynomial> express_rec(const FnOnSub& g, const DecoTree& tree, const std::string& path) {
  const ExprPtr& t = g.domain().expr;
  int m = t->size();
  std::map<Mask, Polynomial> out;
  if (m == 0) {
    out[0] = g(0);
    return out;
  }
  int e = tree.label(path);
  FnOnSub gbar = restrict_last(g, 1 - e);
  for (auto& [M, c] : express_rec(gbar, tree, path + "D")) out[M] = c;
  FnOnSub u = g - copy_up(gbar, t);
  FnOnSub v = divdiff_last(u, e);
  for (auto& [M, c] : express_rec(v, tree, path + "N")) out[M | bit(m)] = c;
  return out;
}

std::map<Mask, Polynomial> express_in_basis(const FnOnSub& g, const DecoTree& tree) {
  if (g.domain().target) throw std::invalid_argument("express_in_basis needs a function on Sub(t)");
  auto out = express_rec(g, tree, "");
  std::erase_if(out, [](auto& kv) { return kv.second.is_zero(); });
  return out;
}

FnOnSub combine(const ExprPtr& t, const DecoTree& tree, const std::map<Mask, Polynomial>& coeffs) {
  FnOnSub g(full_domain(t));
  for (auto& [L, c] : coeffs) g += c * basis_element(t, tree, L);
  return g;
}

FnOnSub nabla_X(const Subexpr& eps, Mask X) {
  const ReflExpr& t = eps.expr();
  int m = t.size();
  ExprPtr cur = make_expr(ReflExpr(t.n, {}));
  FnOnSub g = FnOnSub::constant(full_domain(cur), Polynomial::constant(t.n, 1));
  for (int i = 1; i <= m; ++i) {
    ExprPtr next = i == m ? eps.expr_ptr()
                          : make_expr(ReflExpr(t.n, std::vector<Reflection>(t.entries.begin(), t.entries.begin() + i)));
    g = (X & bit(i)) ? nabla_up(g, next, eps.at(i)) : copy_up(g, next);
    cur = next;
  }
  return g;
}

FnOnSub mu(const Subexpr& eps, const SubSet& sub_w) {
  Mask all = eps.size() ? static_cast<Mask>((std::uint64_t(1) << eps.size()) - 1) : 0;
  return nabla_X(eps, all).restrict_to(sub_w);
}

Polynomial o_of(const Subexpr& eps) {
  Polynomial o = Polynomial::constant(eps.expr().n, 1);
  for (int i = 1; i <= eps.size(); ++i) o *= eps.to(i);
  return o;
}

RationalFn inner(const FnOnSub& g, const FnOnSub& h) {
  if (*g.domain().expr != *h.domain().expr || g.domain().members != h.domain().members)
    throw std::invalid_argument("inner: domain mismatch");
  int n = g.rank();
  const SubSet& dom = g.domain();
  // o(eps) as sign times product of normalized roots
  std::vector<std::map<std::pair<int, int>, int>> facs(dom.size());
  std::vector<int> sign(dom.size(), 1);
  std::map<std::pair<int, int>, int> lcm;
  for (int k = 0; k < dom.size(); ++k) {
    Subexpr e = dom.at(k);
    for (int i = 1; i <= e.size(); ++i) {
      const Permutation& u = e.before(i);
      const Reflection& ti = e.expr()[i];
      int a = u(ti.i), b = u(ti.j);
      if (a > b) {
        std::swap(a, b);
        sign[k] = -sign[k];
      }
      ++facs[k][{a, b}];
    }
    for (auto& [r, c] : facs[k]) lcm[r] = std::max(lcm[r], c);
  }
  Polynomial num(n);
  for (int k = 0; k < dom.size(); ++k) {
    Polynomial term = g.at(k) * h.at(k);
    if (term.is_zero()) continue;
    for (auto& [r, c] : lcm) {
      auto it = facs[k].find(r);
      int have = it == facs[k].end() ? 0 : it->second;
      if (c > have) term *= Polynomial::root(n, r.first, r.second).pow(c - have);
    }
    num += sign[k] > 0 ? term : -term;
  }
  std::vector<RootFactor> den;
  for (auto& [r, c] : lcm) den.push_back({r.first, r.second, c});
  if (num.is_zero()) num = Polynomial(n);
  return RationalFn(num, den);
}

std::vector<std::vector<RationalFn>> pairing_matrix(const std::vector<FnOnSub>& A, const std::vector<FnOnSub>& B) {
  std::vector<std::vector<RationalFn>> M;
  for (auto& a : A) {
    std::vector<RationalFn> row;
    for (auto& b : B) row.push_back(inner(a, b));
    M.push_back(std::move(row));
  }
  return M;
}

std::vector<FnOnSub> upper_samples(const SubSet& sub_w) {
  std::vector<FnOnSub> mus, out;
  for (int k = 0; k < sub_w.size(); ++k) mus.push_back(mu(sub_w.at(k), sub_w));
  out = mus;
  for (int k = 0; k < sub_w.size(); ++k) {
    Subexpr eps = sub_w.at(k);
    for (auto& [p, M] : eps.Msets()) {
      for (Mask X = M & (~M + 1); X; X = (X - M) & M) {
        if (popcount(X) < 2) continue;
        if (eps.bits() & X & ~bit(top_position(X))) continue;
        FnOnSub lam(sub_w);
        for (Mask Y = X;; Y = (Y - 1) & X) {
          if (popcount(Y) % 2 == 0) {
            const FnOnSub& mf = mus[sub_w.index_of(eps.bits() ^ Y)];
            if (rel_card(Y, X) % 2)
              lam -= mf;
            else
              lam += mf;
          }
          if (!Y) break;
        }
        Polynomial d = p.root().pow(popcount(X) - 1);
        std::vector<Polynomial> vals;
        for (auto& v : lam.values()) vals.push_back(exact_div_or_throw(v, d));
        out.emplace_back(sub_w, std::move(vals));
      }
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const FnOnSub& g) {
  const SubSet& d = g.domain();
  j = nlohmann::json::object();
  j["expr"] = *d.expr;
  j["target"] = d.target ? nlohmann::json(*d.target) : nlohmann::json("all");
  auto vals = nlohmann::json::array();
  for (int k = 0; k < d.size(); ++k) vals.push_back({{"bits", bit_string(d.members[k], d.m())}, {"poly", g.at(k)}});
  j["values"] = vals;
}

FnOnSub fn_from_json(const nlohmann::json& j) {
  ExprPtr t = make_expr(j.at("expr").get<ReflExpr>());
  std::optional<Permutation> w;
  if (!(j.at("target").is_string() && j.at("target").get<std::string>() == "all"))
    w = j.at("target").get<Permutation>();
  FnOnSub g(enumerate(t, w));
  for (auto& v : j.at("values")) {
    Polynomial p = v.at("poly").get<Polynomial>();
    if (p.is_zero()) p = Polynomial(t->n);
    g.set(parse_bits(v.at("bits").get<std::string>()), p);
  }
  return g;
}

}  // namespace bsm
