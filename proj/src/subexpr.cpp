#include "bsm/subexpr.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace bsm {

Mask mask_of(const std::vector<int>& ps) {
  Mask x = 0;
  for (int i : ps) {
    if (i < 1 || i > kMaxLen) throw std::out_of_range("position out of range");
    x |= bit(i);
  }
  return x;
}

std::vector<int> positions(Mask x) {
  std::vector<int> r;
  for (int i = 1; x; ++i, x >>= 1)
    if (x & 1) r.push_back(i);
  return r;
}

Mask lex_key(Mask bits, int m) {
  Mask k = 0;
  for (int i = 1; i <= m; ++i)
    if (bits & bit(i)) k |= Mask(1) << (m - i);
  return k;
}

std::string bit_string(Mask bits, int m) {
  std::string s(m, '0');
  for (int i = 1; i <= m; ++i)
    if (bits & bit(i)) s[i - 1] = '1';
  return s;
}

Mask parse_bits(const std::string& s) {
  if (static_cast<int>(s.size()) > kMaxLen) throw std::invalid_argument("bit string too long");
  Mask b = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b |= bit(static_cast<int>(i) + 1);
    else if (s[i] != '0')
      throw std::invalid_argument("bad bit string: " + s);
  }
  return b;
}

std::string set_string(Mask x) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i : positions(x)) {
    os << (first ? "" : ",") << i;
    first = false;
  }
  os << "}";
  return os.str();
}

Subexpr::Subexpr(ExprPtr t, Mask bits) : t_(std::move(t)), bits_(bits) {
  int m = t_->size();
  if (m > kMaxLen) throw CapExceeded("expression longer than " + std::to_string(kMaxLen));
  if (m < kMaxLen && (bits_ >> m)) throw std::invalid_argument("bits beyond expression length");
  pre_.reserve(m + 1);
  conj_.reserve(m);
  Permutation cur = Permutation::identity(t_->n);
  pre_.push_back(cur);
  for (int i = 1; i <= m; ++i) {
    const Reflection& ti = (*t_)[i];
    conj_.push_back(conjugate_reflection(cur, ti));
    if (bits_ & bit(i)) cur = cur * ti.perm();
    pre_.push_back(cur);
  }
}

Subexpr::Subexpr(ExprPtr t, const std::string& bits) : Subexpr(t, parse_bits(bits)) {
  if (static_cast<int>(bits.size()) != t_->size()) throw std::invalid_argument("bit string length mismatch");
}

Polynomial Subexpr::to(int i) const { return before(i).act((*t_)[i].root()); }
Polynomial Subexpr::from(int i) const { return upto(i).act((*t_)[i].root()); }

ReflExpr Subexpr::bullet() const { return ReflExpr(t_->n, conj_); }

Mask Subexpr::M(const Reflection& p) const {
  Mask x = 0;
  for (int i = 1; i <= size(); ++i)
    if (conj_[i - 1] == p) x |= bit(i);
  return x;
}

std::map<Reflection, Mask> Subexpr::Msets() const {
  std::map<Reflection, Mask> r;
  for (int i = 1; i <= size(); ++i) r[conj_[i - 1]] |= bit(i);
  return r;
}

int rel_card(Mask Y, Mask X) {
  if ((Y & ~X) != 0) throw std::invalid_argument("rel_card: Y is not a subset of X");
  int pos = 0, c = 0;
  for (int i = kMaxLen; i >= 1; --i) {
    if (!(X & bit(i))) continue;
    ++pos;
    if ((pos & 1) && (Y & bit(i))) ++c;
  }
  return c;
}

void sort_canonical(std::vector<Mask>& v, int m) {
  std::sort(v.begin(), v.end(), [m](Mask a, Mask b) { return lex_key(a, m) < lex_key(b, m); });
}

int SubSet::index_of(Mask b) const {
  int mm = m();
  Mask key = lex_key(b, mm);
  auto it = std::lower_bound(members.begin(), members.end(), key,
                             [mm](Mask a, Mask k) { return lex_key(a, mm) < k; });
  if (it == members.end() || *it != b) return -1;
  return static_cast<int>(it - members.begin());
}

SubSet SubSet::subset(const std::vector<Mask>& bits) const {
  SubSet s{expr, target, bits};
  sort_canonical(s.members, m());
  s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
  return s;
}

namespace {

// minimal number of transpositions whose product is u
int reflection_length(const Permutation& u) {
  int c = 0;
  std::vector<bool> seen(u.rank() + 1, false);
  for (int i = 1; i <= u.rank(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = u(j)) seen[j] = true;
  }
  return u.rank() - c;
}

void enum_rec(const ReflExpr& t, const Permutation& w, int i, const Permutation& cur, Mask bits,
              std::vector<Mask>& out) {
  int m = t.size();
  Permutation need = cur.inverse() * w;
  int rl = reflection_length(need);
  if (rl > m - i + 1) return;
  if (i > m) {
    if (need.is_identity()) out.push_back(bits);
    return;
  }
  enum_rec(t, w, i + 1, cur, bits, out);
  enum_rec(t, w, i + 1, cur * t[i].perm(), bits | bit(i), out);
}

}  // namespace

SubSet enumerate(const ExprPtr& t, const std::optional<Permutation>& w, int cap) {
  int m = t->size();
  if (m > cap || m > kMaxLen) throw CapExceeded("expression length " + std::to_string(m) + " exceeds cap");
  SubSet s{t, w, {}};
  if (w) {
    if (w->rank() != t->n) throw std::invalid_argument("target rank mismatch");
    enum_rec(*t, *w, 1, Permutation::identity(t->n), 0, s.members);
  } else {
    std::uint64_t total = std::uint64_t(1) << m;
    for (std::uint64_t b = 0; b < total; ++b) s.members.push_back(static_cast<Mask>(b));
  }
  sort_canonical(s.members, m);
  return s;
}

SubSet equiv_class(const Subexpr& eps, const Reflection& p, bool target_restricted) {
  Mask M = eps.M(p);
  std::vector<Mask> out;
  // iterate subsets of M
  for (Mask X = M;; X = (X - 1) & M) {
    if (!target_restricted || popcount(X) % 2 == 0) out.push_back(eps.bits() ^ X);
    if (X == 0) break;
  }
  SubSet s{eps.expr_ptr(), std::nullopt, out};
  if (target_restricted) s.target = eps.target();
  sort_canonical(s.members, eps.size());
  return s;
}

std::optional<Reflection> edge_reflection(const Subexpr& eps, Mask delta_bits) {
  Mask D = eps.bits() ^ delta_bits;
  if (!D) return std::nullopt;
  auto ps = positions(D);
  Reflection p = eps.conj(ps[0]);
  for (int k : ps)
    if (eps.conj(k) != p) return std::nullopt;
  return p;
}

SubGraph graph(const SubSet& phi) {
  SubGraph g{phi, {}, std::vector<std::vector<int>>(phi.size())};
  for (int a = 0; a < phi.size(); ++a) {
    Subexpr e = phi.at(a);
    for (auto& [p, M] : e.Msets()) {
      if (popcount(M) < 2) continue;
      for (Mask Y = M; Y; Y = (Y - 1) & M) {
        if (popcount(Y) % 2 || popcount(Y) < 2) continue;
        int b = phi.index_of(e.bits() ^ Y);
        if (b <= a) continue;
        g.edges.push_back({a, b, p, Y});
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](auto& x, auto& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  for (auto& v : g.adj) std::sort(v.begin(), v.end());
  return g;
}

std::vector<std::vector<int>> components(const SubGraph& g) {
  int N = g.vertices.size();
  std::vector<int> comp(N, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < N; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> c;
    std::deque<int> q{s};
    comp[s] = static_cast<int>(out.size());
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      c.push_back(v);
      for (int u : g.adj[v])
        if (comp[u] < 0) {
          comp[u] = comp[s];
          q.push_back(u);
        }
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

bool is_forest(const SubGraph& g) {
  return g.edges.size() + components(g).size() == static_cast<std::size_t>(g.vertices.size());
}

std::string to_dot(const SubGraph& g, const std::string& name) {
  std::ostringstream os;
  int m = g.vertices.m();
  os << "graph " << name << " {\n";
  for (auto b : g.vertices.members) os << "  \"" << bit_string(b, m) << "\";\n";
  for (auto& e : g.edges)
    os << "  \"" << bit_string(g.vertices.members[e.a], m) << "\" -- \"" << bit_string(g.vertices.members[e.b], m)
       << "\" [label=\"p=" << e.p.str() << ";Y=" << set_string(e.Y) << "\"];\n";
  os << "}\n";
  return os.str();
}

SubSet frozen_set(const SubSet& sub, const Subexpr& eps, Mask X, FrozenMode mode) {
  if (!sub.contains(eps.bits())) throw std::invalid_argument("frozen_set: subexpression not in the set");
  std::vector<Mask> out;
  for (auto d : sub.members) {
    Mask diff = d ^ eps.bits();
    bool keep = mode == FrozenMode::Unfreeze ? (diff & ~X) == 0 : (diff & X) == 0;
    if (keep) out.push_back(d);
  }
  SubSet s = sub.subset(out);
  if (mode != FrozenMode::Con) return s;
  SubGraph g = graph(s);
  for (auto& c : components(g))
    for (int v : c)
      if (s.members[v] == eps.bits()) {
        std::vector<Mask> cm;
        for (int u : c) cm.push_back(s.members[u]);
        return s.subset(cm);
      }
  throw std::logic_error("frozen_set: lost the base point");
}

Balance balance(const Subexpr& eps) {
  Balance b;
  for (int i = 1; i <= eps.size(); ++i) {
    const Permutation& u = eps.before(i);
    if ((u * eps.expr()[i].perm()).length() < u.length())
      b.positive |= bit(i);
    else
      b.negative |= bit(i);
  }
  b.balanced = true;
  for (auto& [p, M] : eps.Msets()) {
    int lo = positions(M).front();
    if (b.positive & bit(lo)) b.balanced = false;
  }
  return b;
}

bool balanced_set(const SubSet& phi) {
  for (int k = 0; k < phi.size(); ++k)
    if (!balance(phi.at(k)).balanced) return false;
  return true;
}

void to_json(nlohmann::json& j, const SubSet& s) {
  j = nlohmann::json::object();
  j["expr"] = *s.expr;
  j["target"] = s.target ? nlohmann::json(*s.target) : nlohmann::json("all");
  auto arr = nlohmann::json::array();
  for (auto b : s.members) arr.push_back(bit_string(b, s.m()));
  j["members"] = arr;
}

}  // namespace bsm
