#include "bsm/dseq.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace bsm {

Chord::Chord(int n_, int a_) : n(n_), a(((a_ % (2 * n_ - 1)) + 2 * n_ - 1) % (2 * n_ - 1)) {}

std::vector<int> Chord::pos_list() const {
  std::vector<int> v{cyc(A1(), mod()), cyc(A2(), mod())};
  std::sort(v.begin(), v.end());
  return v;
}

Mask Chord::positions() const { return mask_of(pos_list()); }

std::string Chord::str() const {
  auto v = pos_list();
  return "{" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "}";
}

std::optional<Chord> chord_of(int n, Mask positions) {
  auto p = bsm::positions(positions);
  if (p.size() != 2) return std::nullopt;
  for (int x : p) {
    Chord c(n, x);
    if (c.positions() == positions) return c;
  }
  return std::nullopt;
}

Mask shift_bits(Mask bits, int m, int k) {
  Mask r = 0;
  for (int i = 1; i <= m; ++i)
    if (bits & bit(cyc(k + i, m))) r |= bit(i);
  return r;
}

Mask e_row(int n, int l) {
  int m = 2 * n - 1;
  l = ((l % m) + m) % m;
  Mask r = 0;
  if (l < n) {
    for (int x = 1; x <= l; ++x) r |= bit(x);
    for (int x = n; x <= n + l - 1; ++x) r |= bit(x);
  } else {
    for (int x = l - n + 1; x <= n - 1; ++x) r |= bit(x);
    for (int x = l + 1; x <= m; ++x) r |= bit(x);
  }
  return r;
}

const SolutionRow& SolutionTable::row(int l) const {
  int m = len();
  return rows[((l % m) + m) % m];
}

std::vector<Chord> SolutionTable::chords() const {
  std::vector<Chord> out;
  for (int a = 0; a < len(); ++a) out.emplace_back(n, a);
  return out;
}

int normalize_k(int n, int k) {
  int m = 2 * n - 1;
  k = ((k % m) + m) % m;
  return k > n - 1 ? k - m : k;
}

std::vector<int> identity_arrangement(int n) {
  std::vector<int> i(n);
  std::iota(i.begin(), i.end(), 1);
  return i;
}

std::vector<int> random_arrangement(int n, std::mt19937_64& rng) {
  auto i = identity_arrangement(n);
  std::shuffle(i.begin(), i.end(), rng);
  return i;
}

static ReflExpr D_shift(int n, const std::vector<int>& i, int k) { return shift(make_D(n, i), k); }

SolutionTable e_table(int n, int k, const std::vector<int>& i) {
  if (n < 3) throw std::invalid_argument("D-sequence tables need n >= 3");
  if (2 * n - 1 > kMaxLen) throw std::invalid_argument("n too large");
  if (static_cast<int>(i.size()) != n) throw std::invalid_argument("arrangement must have n entries");
  SolutionTable tab;
  tab.n = n;
  tab.k = normalize_k(n, k);
  tab.i = i;
  tab.t = make_expr(D_shift(n, i, tab.k));
  for (int l = 0; l < tab.len(); ++l) {
    Subexpr e(tab.t, shift_bits(e_row(n, l), tab.len(), tab.k));
    tab.rows.push_back({l, e, e.bullet()});
  }
  return tab;
}

bool verify_solutions(const SolutionTable& tab) {
  auto sub = enumerate(tab.t, Permutation::identity(tab.n));
  if (sub.size() != tab.len()) return false;
  std::set<Mask> rows;
  for (auto& r : tab.rows) rows.insert(r.e.bits());
  return rows == std::set<Mask>(sub.members.begin(), sub.members.end());
}

void chord_label(SolutionTable& tab) {
  int m = tab.len();
  tab.a_bullet.assign(m, -1);
  tab.bullet_a.assign(m, -1);
  tab.tA.assign(m, Reflection());
  std::vector<bool> have(m, false);
  auto set_t = [&](const Chord& A, const Reflection& p) {
    if (have[A.a] && tab.tA[A.a] != p)
      throw LabelingFailure("t(" + A.str() + ") ambiguous: " + tab.tA[A.a].str() + " vs " + p.str());
    tab.tA[A.a] = p;
    have[A.a] = true;
  };
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<Chord, Reflection>> doubled;
    for (auto& [p, M] : tab.rows[r].e.Msets()) {
      if (popcount(M) < 2) continue;
      auto c = chord_of(tab.n, M);
      if (!c) throw LabelingFailure("row " + std::to_string(r) + ": M_" + p.str() + " = " + set_string(M) + " is not a chord");
      doubled.push_back({*c, p});
    }
    if (doubled.size() != 2)
      throw LabelingFailure("row " + std::to_string(r) + ": " + std::to_string(doubled.size()) + " doubled reflections");
    int found = 0;
    for (int s = 0; s < 2; ++s) {
      auto& [A, p] = doubled[s];
      auto& [B, q] = doubled[1 - s];
      if (!(B == A.plus(1))) continue;
      ++found;
      if (tab.a_bullet[A.a] >= 0 || tab.bullet_a[B.a] >= 0)
        throw LabelingFailure("chord " + A.str() + " labels two rows");
      tab.a_bullet[A.a] = r;
      tab.bullet_a[B.a] = r;
      set_t(A, p);
      set_t(B, q);
    }
    if (found != 1) throw LabelingFailure("row " + std::to_string(r) + ": no chord pair (A, 1+A)");
  }
  for (int a = 0; a < m; ++a)
    if (tab.a_bullet[a] < 0 || tab.bullet_a[a] < 0 || !have[a])
      throw LabelingFailure("chord " + Chord(tab.n, a).str() + " unlabeled");
  tab.alphaA.clear();
  for (auto& p : tab.tA) tab.alphaA.push_back(p.root());
  tab.labeled = true;
  for (auto& A : tab.chords()) {
    if (tab.eA(A).fold(A.positions()) != tab.Ae(A)) throw LabelingFailure("f_A e^{A,.} != e^{.,A} for A = " + A.str());
    if (tab.eA(A) == tab.Ae(A)) throw LabelingFailure("labelings agree at " + A.str());
  }
}

static CheckResult check(std::string name, bool ok, std::string detail = "") { return {std::move(name), ok, std::move(detail)}; }

static Family family_of(const OrderContext& c, const std::vector<const Subexpr*>& v) {
  Family f = 0;
  for (auto* e : v) {
    int idx = c.index_of(e->bits());
    if (idx < 0) throw std::logic_error("row outside Sub(t,1)");
    f |= Family(1) << idx;
  }
  return f;
}

std::vector<CheckResult> structure_checks(const SolutionTable& tab) {
  std::vector<CheckResult> out;
  const int n = tab.n, k = tab.k, m = tab.len();
  const auto& i = tab.i;
  const ReflExpr& t = *tab.t;

  // c u a = (a u c)[n-1], so the printed shift n-k is off by one
  out.push_back(check("reverse", reverse(t) == D_shift(n, seq::ddot(i), n - 1 - k)));

  {
    ReflExpr lhs = fold_expr(t, {cyc(1 - k, m), cyc(n - k, m)});
    ReflExpr rhs = k <= 0 ? D_shift(n, seq::shift(i, 1), k - 1) : D_shift(n, seq::shift1(i, 1), k - 1);
    out.push_back(check("fold f_{1-k,n-k}", lhs == rhs, lhs.str()));
  }
  if (-n <= k && k <= n - 2) {
    ReflExpr lhs = fold_expr(t, {cyc(-k, m), cyc(n - 1 - k, m)});
    ReflExpr rhs = k < 0 ? D_shift(n, seq::shift(i, -1), k + 1) : D_shift(n, seq::shift1(i, -1), k + 1);
    out.push_back(check("fold f_{-k,n-1-k}", lhs == rhs, lhs.str()));
  }

  // doubled positions of the shifted D-sequence
  {
    ReflExpr D0 = make_D(n, i);
    bool ok = true;
    for (auto& p : D0.support()) {
      std::set<int> want, got;
      for (int x : D0.M(p)) want.insert(cyc(x - k, m));
      for (int x : t.M(p)) got.insert(x);
      ok = ok && want == got;
    }
    Reflection a(n, i[0], i[n - 1]), b(n, i[0], i[1]);
    auto as_set = [&](std::vector<int> v) { return std::set<int>(v.begin(), v.end()); };
    ok = ok && as_set(t.M(a)) == std::set<int>{cyc(-k, m), cyc(n - 1 - k, m)};
    ok = ok && as_set(t.M(b)) == std::set<int>{cyc(1 - k, m), cyc(n - k, m)};
    for (auto& p : t.support())
      if (p != a && p != b) ok = ok && t.M(p).size() <= 1;
    out.push_back(check("doubled positions", ok));
  }

  {
    bool ok = true;
    for (int l = 0; l < m; ++l)
      ok = ok && (e_row(n, l - 1) ^ mask_of({cyc(l, m), cyc(l + n - 1, m)})) == e_row(n, l);
    out.push_back(check("f e^(l-1) = e^(l)", ok));
  }

  {
    bool ok = true;
    std::string bad;
    for (int l = 1 - n + k; l <= n - 1 + k; ++l) {
      ReflExpr want;
      if (k > 0)
        want = l >= k ? D_shift(n, seq::shift(seq::shift1(i, k), l - k), k - l) : D_shift(n, seq::shift1(i, l), k - l);
      else
        want = l >= k ? D_shift(n, seq::shift(i, l), k - l) : D_shift(n, seq::shift1(seq::shift(i, k), l - k), k - l);
      if (tab.row(l).bullet != want) {
        ok = false;
        bad += " l=" + std::to_string(l);
      }
    }
    out.push_back(check("bullet closed forms", ok, bad));
  }

  if (!tab.labeled) {
    out.push_back(check("labels", false, "table not labeled"));
    return out;
  }

  {
    bool ok = true;
    for (auto& A : tab.chords()) {
      std::vector<Polynomial> roots;
      for (int j = 1; j <= n - 1; ++j) roots.push_back(tab.alphaA[A.plus(j).a]);
      ok = ok && linear_rank(roots) == n - 1;
    }
    out.push_back(check("root independence", ok));
  }

  OrderContext ctx(tab.t, Permutation::identity(n));
  {
    bool ok = true;
    std::string bad;
    for (auto& A : tab.chords()) {
      int ea = ctx.index_of(tab.eA(A).bits()), ae = ctx.index_of(tab.Ae(A).bits());
      auto arc = [&](int from, int cnt, int dir, bool a_side) {
        std::vector<const Subexpr*> v;
        for (int j = 0; j < cnt; ++j) {
          Chord B = A.plus(from + dir * j);
          v.push_back(a_side ? &tab.eA(B) : &tab.Ae(B));
        }
        return family_of(ctx, v);
      };
      bool p1 = con_component(ctx, ea, bit(cyc(A.A1(), m))) == arc(0, n, 1, true);
      bool p2 = con_component(ctx, ea, bit(cyc(A.A2(), m))) == arc(0, n - 1, 1, true);
      bool p3 = con_component(ctx, ae, bit(cyc(A.A1(), m))) == arc(0, n - 1, -1, false);
      bool p4 = con_component(ctx, ae, bit(cyc(A.A2(), m))) == arc(0, n, -1, false);
      if (!(p1 && p2 && p3 && p4)) {
        ok = false;
        bad += " " + A.str();
      }
    }
    out.push_back(check("con components", ok, bad));
  }

  {
    const auto& g = ctx.gr;
    bool ok = static_cast<int>(g.edges.size()) == m && ctx.size() == m && components(g).size() == 1;
    for (auto& a : g.adj) ok = ok && a.size() == 2;
    for (auto& B : tab.chords()) {
      int u = ctx.index_of(tab.Ae(B).bits()), v = ctx.index_of(tab.eA(B).bits());
      bool hit = std::any_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) {
        return ((e.a == u && e.b == v) || (e.a == v && e.b == u)) && e.Y == B.positions() && e.p == tab.t_of(B);
      });
      ok = ok && hit;
    }
    out.push_back(check("odd cycle", ok));
  }
  return out;
}

static bool all_ok(const std::vector<CheckResult>& v) {
  return std::all_of(v.begin(), v.end(), [](const CheckResult& c) { return c.ok; });
}

DseqReport dseq_report(int n, int k, const std::vector<int>& i, const Caps& caps, std::uint64_t seed) {
  DseqReport r;
  r.n = n;
  r.i = i;
  r.seed = seed;
  SolutionTable tab = e_table(n, k, i);
  r.k = tab.k;
  r.solutions_ok = verify_solutions(tab);
  try {
    chord_label(tab);
    r.labels_ok = true;
  } catch (const LabelingFailure& e) {
    r.checks.push_back(check("labels", false, e.what()));
  }
  auto sc = structure_checks(tab);
  r.checks.insert(r.checks.end(), sc.begin(), sc.end());
  r.checks_ok = all_ok(r.checks);
  if (!r.labels_ok) return r;

  OrderContext ctx(tab.t, Permutation::identity(n));
  Trace tr = run_with_fallback(ctx, Mode::Con, caps);
  r.outcome = tr.outcome_str();
  r.last_step = tr.last_step;
  r.greedy = tr.greedy;
  r.P = tr.P;

  // step m holds the arcs {e^{A,.}, ..., e^{A+m-1,.}} with P = 1 + (m-1)v^-2
  bool arcs = true;
  int upto = std::min<int>(n + 1, static_cast<int>(tr.steps.size()) - 1);
  for (int s = 1; s <= upto; ++s) {
    std::set<Family> want;
    for (auto& A : tab.chords()) {
      std::vector<const Subexpr*> v;
      for (int j = 0; j < s; ++j) v.push_back(&tab.eA(A.plus(j)));
      want.insert(family_of(ctx, v));
    }
    GradedRank p = GradedRank::monomial(0) + GradedRank::monomial(-2, s - 1);
    std::set<Family> got;
    for (auto& e : tr.steps[s]) {
      got.insert(e.phi);
      arcs = arcs && e.P == p;
    }
    if (tr.greedy)
      arcs = arcs && std::includes(want.begin(), want.end(), got.begin(), got.end());
    else
      arcs = arcs && got == want;
  }
  r.arcs_ok = arcs && tr.last_step >= n + 1;

  std::vector<Polynomial> st_roots;
  if (n == 3) {
    GradedRank want = GradedRank::monomial(0) + GradedRank::monomial(-2, 3) + GradedRank::monomial(-4);
    r.verdict = tr.outcome == Outcome::Completed && r.P && *r.P == want;
  } else {
    const auto& last = tr.steps[tr.last_step];
    r.surviving = static_cast<int>(last.size());
    GradedRank want = GradedRank::monomial(0) + GradedRank::monomial(-2, n);
    r.surviving_P_ok = std::all_of(last.begin(), last.end(), [&](const StepEntry& e) { return e.P == want; });
    bool pattern = true, match = true, indep = true;
    for (std::size_t s = 0; s < last.size(); ++s) {
      auto rr = residual_constraints(ctx, last[s].phi);
      pattern = pattern && rr.string_pattern;
      indep = indep && rr.independent;
      // locate the arc and compare with the chord roots after it
      std::multiset<std::pair<int, int>> want_roots, got_roots;
      bool found = false;
      for (auto& A : tab.chords()) {
        std::vector<const Subexpr*> v;
        for (int j = 0; j <= n; ++j) v.push_back(&tab.eA(A.plus(j)));
        if (family_of(ctx, v) != last[s].phi) continue;
        found = true;
        for (int j = n + 1; j <= 2 * n - 1; ++j) {
          auto p = tab.t_of(A.plus(j));
          want_roots.insert({p.i, p.j});
        }
      }
      for (auto& p : rr.roots) got_roots.insert({p.i, p.j});
      match = match && found && want_roots == got_roots;
      if (s == 0) {
        for (auto& c : rr.conds) r.residual.push_back(c.str(ctx));
        for (auto& p : rr.roots) {
          r.roots.push_back(p.str());
          st_roots.push_back(p.root());
        }
      }
    }
    r.string_pattern = pattern && !last.empty();
    r.roots_match = match;
    r.independent = indep;
  }
  {
    bool ok = true;
    for (auto& A : tab.chords()) {
      std::vector<Polynomial> roots;
      for (int j = 1; j <= n - 1; ++j) roots.push_back(tab.alphaA[A.plus(j).a]);
      ok = ok && linear_rank(roots) == n - 1;
    }
    r.independence_all_A = ok;
  }
  if (n >= 4) {
    // the residual summand, rewritten in coordinates where its roots are variables
    bool cc_ok = false;
    try {
      auto cc = coordinate_change(st_roots);
      cc_ok = true;
      for (std::size_t j = 0; j < st_roots.size(); ++j)
        cc_ok = cc_ok && cc.to_new(st_roots[j]) == Polynomial::var(n, static_cast<int>(j) + 1);
    } catch (const DependentRoots&) {
    }
    std::mt19937_64 rng(seed);
    r.st = st_check(n - 1, 1, rng, true);
    std::vector<GradedRank> dual_want{GradedRank::monomial(2, n - 1), GradedRank::monomial(0)};
    r.pd_ok = cc_ok && r.st->pd_st == n - 3 && r.st->pd_dual == 1 && r.st->dual_ranks == dual_want && r.st->ok(true);
    r.verdict = tr.outcome == Outcome::Premature && tr.last_step == n + 1 && r.surviving == 2 * n - 1 &&
                r.surviving_P_ok && r.string_pattern && r.roots_match && r.independent && r.pd_ok && !tr.greedy;
  }
  r.verdict = r.verdict && r.solutions_ok && r.labels_ok && r.checks_ok && r.arcs_ok && r.independence_all_A;
  return r;
}

std::string table_dot(const SolutionTable& tab) {
  std::ostringstream os;
  os << "graph D {\n  layout=circo;\n  node [shape=circle];\n";
  for (auto& row : tab.rows)
    os << "  r" << row.l << " [label=\"" << row.l << "\\n" << row.e.str() << "\"];\n";
  if (tab.labeled) {
    for (auto& B : tab.chords()) {
      os << "  r" << tab.rows[tab.bullet_a[B.a]].l << " -- r" << tab.rows[tab.a_bullet[B.a]].l << " [label=\"f"
         << B.str() << " " << tab.t_of(B).str() << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

void to_json(nlohmann::json& j, const CheckResult& c) { j = {{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}}; }

void to_json(nlohmann::json& j, const DseqReport& r) {
  j = {{"n", r.n},
       {"k", r.k},
       {"perm", r.i},
       {"seed", r.seed},
       {"solutions_ok", r.solutions_ok},
       {"labels_ok", r.labels_ok},
       {"checks_ok", r.checks_ok},
       {"checks", r.checks},
       {"outcome", r.outcome},
       {"last_step", r.last_step},
       {"greedy", r.greedy},
       {"arcs_ok", r.arcs_ok},
       {"independence_all_A", r.independence_all_A},
       {"verdict", r.verdict}};
  if (r.P) j["P"] = r.P->str();
  if (r.n >= 4) {
    j["surviving"] = r.surviving;
    j["surviving_P_ok"] = r.surviving_P_ok;
    j["string_pattern"] = r.string_pattern;
    j["roots_match"] = r.roots_match;
    j["independent"] = r.independent;
    j["residual"] = r.residual;
    j["roots"] = r.roots;
    j["pd_ok"] = r.pd_ok;
    if (r.st) j["st"] = *r.st;
  }
}

nlohmann::json table_json(const SolutionTable& tab) {
  nlohmann::json j = {{"n", tab.n}, {"k", tab.k}, {"perm", tab.i}, {"expr", *tab.t}};
  auto rows = nlohmann::json::array();
  for (auto& r : tab.rows) rows.push_back({{"l", r.l}, {"bits", r.e.str()}, {"bullet", r.bullet.str()}});
  j["rows"] = rows;
  if (tab.labeled) {
    auto lab = nlohmann::json::array();
    for (auto& A : tab.chords())
      lab.push_back({{"A", A.str()},
                     {"e_A_bullet", tab.eA(A).str()},
                     {"e_bullet_A", tab.Ae(A).str()},
                     {"t", tab.t_of(A).str()},
                     {"alpha", tab.alphaA[A.a].str()}});
    j["labels"] = lab;
  }
  return j;
}

}  // namespace bsm
