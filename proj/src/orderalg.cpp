#include "bsm/orderalg.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <numeric>
#include <sstream>

namespace bsm {

OrderContext::OrderContext(const ExprPtr& t, const Permutation& w) : OrderContext(enumerate(t, w)) {}

OrderContext::OrderContext(SubSet s) : sub(std::move(s)) {
  if (sub.size() > kMaxFamilyBits)
    throw CapExceeded("|Sub(t,w)| = " + std::to_string(sub.size()) + " exceeds " + std::to_string(kMaxFamilyBits));
  for (int k = 0; k < sub.size(); ++k) {
    el.push_back(sub.at(k));
    msets.push_back(el.back().Msets());
  }
  gr = graph(sub);
}

Family OrderContext::all() const { return size() == 64 ? ~Family(0) : (Family(1) << size()) - 1; }

std::string OrderContext::family_string(Family f) const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int k = 0; k < size(); ++k)
    if (f >> k & 1) {
      os << (first ? "" : ",") << bit_string(sub.members[k], m());
      first = false;
    }
  os << "}";
  return os.str();
}

static bool in(Family f, int k) { return k >= 0 && (f >> k & 1); }

std::vector<Mask> phi_p(const OrderContext& c, Family phi, int eps, const Reflection& p) {
  Mask M = c.msets[eps].at(p);
  Mask e = c.el[eps].bits();
  std::vector<Mask> fam;
  for (Mask X = M & (~M + 1); X; X = (X - M) & M) {
    bool ok = true;
    for (Mask Y = X; Y && ok; Y = (Y - 1) & X)
      if (popcount(Y) % 2 == 0 && !in(phi, c.index_of(e ^ Y))) ok = false;
    if (ok) fam.push_back(X);
  }
  return fam;
}

int n_p(const OrderContext& c, Family phi, int eps, const Reflection& p) {
  int n = 0;
  for (Mask X : phi_p(c, phi, eps, p)) n = std::max(n, popcount(X));
  return n;
}

Family con_component(const OrderContext& c, int eps, Mask Y) {
  Mask e = c.el[eps].bits();
  Family seen = Family(1) << eps;
  std::deque<int> q{eps};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : c.gr.adj[v]) {
      if (in(seen, u) || ((c.sub.members[u] ^ e) & Y)) continue;
      seen |= Family(1) << u;
      q.push_back(u);
    }
  }
  return seen;
}

static void subsets_of_size(Mask M, int k, std::vector<Mask>& out) {
  for (Mask X = M;; X = (X - 1) & M) {
    if (popcount(X) == k) out.push_back(X);
    if (!X) break;
  }
}

std::optional<ClosenessCert> closeness(const OrderContext& c, Family phi, int eps, Mode mode) {
  if (in(phi, eps)) throw InFamily();
  std::vector<PerP> per;
  std::vector<std::vector<Mask>> cands;
  for (auto& [p, M] : c.msets[eps]) {
    auto fam = phi_p(c, phi, eps, p);
    int np = 0;
    for (Mask X : fam) np = std::max(np, popcount(X));
    std::vector<Mask> cp;
    if (mode == Mode::Con || np == 1) {
      subsets_of_size(M, np - 1, cp);
    } else {
      // cotransversal choices: Z minus one point outside the forced union
      Mask Z = 0;
      for (Mask X : fam)
        if (popcount(X) == np) {
          Z = X;
          break;
        }
      Mask U = 0;
      for (Mask X : fam) {
        if (popcount(X & ~Z) > 1) return std::nullopt;
        if (X & ~Z) U |= X & Z;
      }
      for (int z : positions(Z & ~U)) cp.push_back(Z & ~bit(z));
    }
    if (cp.empty()) return std::nullopt;
    per.push_back({p, M, np, 0});
    cands.push_back(std::move(cp));
  }
  std::vector<Mask> Ys{0};
  for (auto& cp : cands) {
    std::vector<Mask> next;
    for (Mask a : Ys)
      for (Mask b : cp) next.push_back(a | b);
    Ys = std::move(next);
  }
  int m = c.m();
  std::sort(Ys.begin(), Ys.end(), [m](Mask a, Mask b) { return lex_key(a, m) < lex_key(b, m); });
  Mask e = c.el[eps].bits();
  for (Mask Y : Ys) {
    bool ok = true;
    if (mode == Mode::Plain) {
      for (int k = 0; k < c.size() && ok; ++k)
        if (in(phi, k) && ((c.sub.members[k] ^ e) & Y) == 0) ok = false;
    } else {
      ok = (con_component(c, eps, Y) & phi) == 0;
    }
    if (!ok) continue;
    ClosenessCert cert;
    cert.Y = Y;
    cert.per_p = per;
    for (auto& pp : cert.per_p) pp.chosen = Y & pp.M;
    cert.dist = 2 * popcount(Y);
    return cert;
  }
  return std::nullopt;
}

FnOnSub certificate_mu(const OrderContext& c, int eps, const ClosenessCert& cert, Mode mode) {
  FnOnSub g = nabla_X(c.el[eps], cert.Y).restrict_to(c.sub);
  if (mode == Mode::Con) {
    Family comp = con_component(c, eps, cert.Y);
    for (int k = 0; k < c.size(); ++k)
      if (!in(comp, k)) g.set(c.sub.members[k], Polynomial(c.sub.expr->n));
  }
  return g;
}

std::string Trace::outcome_str() const {
  switch (outcome) {
    case Outcome::Completed: return "completed";
    case Outcome::Premature: return "premature";
    case Outcome::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

namespace {

struct Candidate {
  Family key;
  StepEntry entry;
};

std::vector<Candidate> expand(const OrderContext& c, Mode mode, const std::vector<StepEntry>& cur, std::size_t lo,
                              std::size_t hi, bool greedy) {
  std::vector<Candidate> out;
  for (std::size_t a = lo; a < hi; ++a) {
    const StepEntry& en = cur[a];
    for (int eps = 0; eps < c.size(); ++eps) {
      if (in(en.phi, eps)) continue;
      auto cert = closeness(c, en.phi, eps, mode);
      if (!cert) continue;
      StepEntry ne;
      ne.phi = en.phi | Family(1) << eps;
      ne.P = en.P + GradedRank::monomial(-cert->dist);
      ne.parent = en.phi;
      ne.eps = eps;
      ne.Y = cert->Y;
      ne.dist = cert->dist;
      out.push_back({ne.phi, ne});
      if (greedy) return out;
    }
  }
  return out;
}

}  // namespace

Trace run_algorithm(const OrderContext& c, Mode mode, const Caps& caps) {
  Trace tr;
  tr.mode = mode;
  tr.greedy = caps.greedy;
  std::vector<StepEntry> cur{StepEntry{}};
  tr.steps.push_back(cur);
  int N = c.size();
  for (int k = 0; k < N; ++k) {
    std::vector<Candidate> cand;
    int workers = std::max(1, caps.workers);
    if (caps.greedy || workers == 1 || cur.size() < 2 * static_cast<std::size_t>(workers)) {
      cand = expand(c, mode, cur, 0, cur.size(), caps.greedy);
    } else {
      std::vector<std::future<std::vector<Candidate>>> parts;
      std::size_t chunk = (cur.size() + workers - 1) / workers;
      for (std::size_t lo = 0; lo < cur.size(); lo += chunk)
        parts.push_back(std::async(std::launch::async, expand, std::cref(c), mode, std::cref(cur), lo,
                                   std::min(cur.size(), lo + chunk), false));
      for (auto& f : parts) {
        auto v = f.get();
        cand.insert(cand.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
      }
    }
    std::map<Family, StepEntry> next;
    for (auto& cd : cand) {
      auto [it, fresh] = next.try_emplace(cd.key, cd.entry);
      if (!fresh && it->second.P != cd.entry.P)
        throw UniquenessViolation("different ranks for the same family " + c.family_string(cd.key) + ": " +
                                  it->second.P.str() + " vs " + cd.entry.P.str());
    }
    if (next.empty()) {
      tr.outcome = Outcome::Premature;
      tr.last_step = k;
      return tr;
    }
    if (next.size() > caps.max_family) {
      tr.outcome = Outcome::CapExceeded;
      tr.last_step = k;
      return tr;
    }
    cur.clear();
    for (auto& [key, e] : next) cur.push_back(e);
    tr.steps.push_back(cur);
  }
  tr.outcome = Outcome::Completed;
  tr.last_step = N;
  tr.P = cur.front().P;
  return tr;
}

Trace run_with_fallback(const OrderContext& c, Mode mode, const Caps& caps) {
  Trace tr = run_algorithm(c, mode, caps);
  if (tr.outcome != Outcome::CapExceeded) return tr;
  Caps g = caps;
  g.greedy = true;
  return run_algorithm(c, mode, g);
}

BalancedReport balanced_order(const OrderContext& c) {
  BalancedReport r;
  int N = c.size();
  std::vector<Mask> pos(N);
  r.balanced = true;
  for (int k = 0; k < N; ++k) {
    Balance b = balance(c.el[k]);
    pos[k] = b.positive;
    if (!b.balanced && r.balanced) {
      r.balanced = false;
      r.witness = k;
    }
  }
  if (!r.balanced) return r;
  // d before e iff the largest index where they differ is positive for e
  auto before = [&](int d, int e) {
    Mask D = c.sub.members[d] ^ c.sub.members[e];
    int top = 32 - __builtin_clz(D);
    return (pos[e] & bit(top)) != 0;
  };
  std::vector<int> score(N, 0);
  r.total_order = true;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      bool ab = before(a, b), ba = before(b, a);
      if (ab == ba) r.total_order = false;
      if (ab) ++score[b];
      if (ba) ++score[a];
    }
  std::vector<int> sorted = score;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < N; ++k)
    if (sorted[k] != k) r.total_order = false;
  if (!r.total_order) return r;
  r.order.resize(N);
  for (int k = 0; k < N; ++k) r.order[score[k]] = k;
  r.perfect = true;
  Family phi = 0;
  for (int e : r.order) {
    auto cert = closeness(c, phi, e, Mode::Plain);
    r.positives.push_back(popcount(pos[e]));
    if (!cert || cert->dist != 2 * popcount(pos[e])) {
      r.perfect = false;
      r.dists.push_back(cert ? cert->dist : -1);
    } else {
      r.dists.push_back(cert->dist);
      r.P += GradedRank::monomial(-cert->dist);
    }
    phi |= Family(1) << e;
  }
  return r;
}

AcyclicReport acyclic_rank(const OrderContext& c) {
  AcyclicReport r;
  int N = c.size();
  r.vertices = N;
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<int>> forest(N);
  for (auto& e : c.gr.edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra == rb) {
      // path from e.a to e.b inside the forest closes the cycle
      std::vector<int> prev(N, -1);
      std::deque<int> q{e.a};
      prev[e.a] = e.a;
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : forest[v])
          if (prev[u] < 0) {
            prev[u] = v;
            q.push_back(u);
          }
      }
      for (int v = e.b; v != e.a; v = prev[v]) r.cycle.push_back(v);
      r.cycle.push_back(e.a);
      r.forest = false;
      r.comps = static_cast<int>(components(c.gr).size());
      return r;
    }
    parent[ra] = rb;
    forest[e.a].push_back(e.b);
    forest[e.b].push_back(e.a);
  }
  r.forest = true;
  r.comps = static_cast<int>(components(c.gr).size());
  r.P = GradedRank::monomial(0, r.comps) + GradedRank::monomial(-2, N - r.comps);
  return r;
}

std::string Congruence::str(const OrderContext& c) const {
  std::ostringstream os;
  bool first = true;
  for (auto [k, s] : terms) {
    os << (first ? (s < 0 ? "-" : "") : (s < 0 ? " - " : " + ")) << "g(" << bit_string(c.sub.members[k], c.m()) << ")";
    first = false;
  }
  os << " = 0 mod " << p.root().str();
  if (exponent > 1) os << " ^" << exponent;
  return os.str();
}

int linear_rank(const std::vector<Polynomial>& forms) {
  if (forms.empty()) return 0;
  int n = forms[0].rank();
  std::vector<std::vector<mpq_class>> A;
  for (auto& f : forms) {
    std::vector<mpq_class> row(n);
    for (int i = 1; i <= n; ++i) row[i - 1] = f.linear_coeff(i);
    A.push_back(row);
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(A.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(A.size()); ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[rank]);
    for (int r = 0; r < static_cast<int>(A.size()); ++r) {
      if (r == rank || A[r][col] == 0) continue;
      mpq_class f = A[r][col] / A[rank][col];
      for (int k = col; k < n; ++k) A[r][k] -= f * A[rank][k];
    }
    ++rank;
  }
  return rank;
}

ResidualReport residual_constraints(const OrderContext& c, Family phi) {
  ResidualReport r;
  int N = c.size();
  for (int k = 0; k < N; ++k)
    if (!in(phi, k)) r.free.push_back(k);
  std::map<std::pair<std::vector<std::pair<int, int>>, Reflection>, int> strongest;
  for (int k = 0; k < N; ++k) {
    Mask e = c.el[k].bits();
    for (auto& [p, M] : c.msets[k]) {
      for (Mask X = M & (~M + 1); X; X = (X - M) & M) {
        if (popcount(X) < 2) continue;
        if (e & X & ~bit(32 - __builtin_clz(X))) continue;
        std::map<int, int> lin;
        for (Mask Y = X;; Y = (Y - 1) & X) {
          if (popcount(Y) % 2 == 0) {
            int j = c.index_of(e ^ Y);
            if (!in(phi, j)) lin[j] += rel_card(Y, X) % 2 ? -1 : 1;
          }
          if (!Y) break;
        }
        std::vector<std::pair<int, int>> terms;
        for (auto [j, s] : lin)
          if (s) terms.push_back({j, s});
        if (terms.empty()) continue;
        if (terms[0].second < 0)
          for (auto& t : terms) t.second = -t.second;
        int& ex = strongest[{terms, p}];
        ex = std::max(ex, popcount(X) - 1);
      }
    }
  }
  for (auto& [key, ex] : strongest) r.conds.push_back({key.first, key.second, ex});

  // string pattern: ground - v_1 - ... - v_k - ground, one congruence per link
  int K = static_cast<int>(r.free.size());
  if (K == 0) return r;
  bool shape = static_cast<int>(r.conds.size()) == K + 1;
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbour or -1 for ground, cond index)
  for (int i = 0; i < static_cast<int>(r.conds.size()) && shape; ++i) {
    auto& cd = r.conds[i];
    if (cd.exponent != 1 || cd.terms.size() > 2 || cd.terms.empty()) {
      shape = false;
      break;
    }
    if (cd.terms.size() == 1) {
      adj[cd.terms[0].first].push_back({-1, i});
    } else {
      adj[cd.terms[0].first].push_back({cd.terms[1].first, i});
      adj[cd.terms[1].first].push_back({cd.terms[0].first, i});
    }
  }
  if (shape)
    for (int v : r.free)
      if (adj[v].size() != 2) shape = false;
  if (!shape) return r;
  int start = -1;
  for (int v : r.free)
    for (auto [u, i] : adj[v])
      if (u == -1 && start < 0) start = v;
  if (start < 0) return r;
  std::vector<bool> used(r.conds.size(), false);
  int v = start, came = -1;
  for (auto [u, i] : adj[v])
    if (u == -1) {
      came = i;
      break;
    }
  used[came] = true;
  r.roots.push_back(r.conds[came].p);
  while (true) {
    r.path.push_back(v);
    int nxt = -2, ci = -1;
    for (auto [u, i] : adj[v])
      if (!used[i]) {
        nxt = u;
        ci = i;
        break;
      }
    if (ci < 0) break;
    used[ci] = true;
    r.roots.push_back(r.conds[ci].p);
    if (nxt == -1) break;
    v = nxt;
  }
  bool all_used = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
  std::vector<Reflection> sorted = r.roots;
  std::sort(sorted.begin(), sorted.end());
  bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  r.string_pattern = all_used && static_cast<int>(r.path.size()) == K && distinct;
  if (r.string_pattern) {
    std::vector<Polynomial> forms;
    for (auto& p : r.roots) forms.push_back(p.root());
    r.independent = linear_rank(forms) == static_cast<int>(forms.size());
  }
  return r;
}

nlohmann::json trace_json(const OrderContext& c, const Trace& t) {
  using nlohmann::json;
  json j;
  j["mode"] = t.mode == Mode::Plain ? "algo1" : "algo2";
  j["outcome"] = t.outcome_str();
  j["last_step"] = t.last_step;
  j["greedy"] = t.greedy;
  if (t.P) j["P"] = t.P->str();
  auto steps = json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    auto fam = json::array();
    for (auto& e : t.steps[k]) {
      json je{{"phi", c.family_string(e.phi)}, {"P", e.P.str()}};
      if (e.eps >= 0) {
        je["from"] = c.family_string(e.parent);
        je["eps"] = bit_string(c.sub.members[e.eps], c.m());
        je["Y"] = set_string(e.Y);
        je["dist"] = e.dist;
      }
      fam.push_back(je);
    }
    steps.push_back({{"step", k}, {"entries", fam}});
  }
  j["steps"] = steps;
  return j;
}

}  // namespace bsm
