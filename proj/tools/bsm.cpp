// bsm: command-line front end.
// Exit status: 0 ok, 1 a check failed, 2 usage error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "bsm/dseq.hpp"
#include "bsm/criteria.hpp"

using namespace bsm;
using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  // expression
  std::string expr_file, dseq, pairs, target;
  int shift = 0, n = 0;
  // outputs
  std::string json_out, dot_out, trace_out;
  std::uint64_t seed = 1;
  int workers = 0;
  std::size_t max_family = 200000;
  bool greedy = false;
  // misc
  std::string in_file, kind = "xt", phi, expect;
  bool random_tree = false;
};

int default_workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

void add_expr(CLI::App* c, Opts& o, bool target) {
  c->add_option("--expr", o.expr_file, "reflection expression JSON file");
  c->add_option("--dseq", o.dseq, "D-sequence arrangement, e.g. 1,2,3,4");
  c->add_option("--shift", o.shift, "cyclic shift applied to --dseq");
  c->add_option("--pairs", o.pairs, "entries as i-j,i-j,... (needs --n)");
  c->add_option("--n", o.n, "rank for --pairs");
  if (target) c->add_option("--target", o.target, "target permutation: 1,3,2 or (1 3)");
}
void add_out(CLI::App* c, Opts& o) {
  c->add_option("--json", o.json_out, "write a JSON report (- for stdout)");
  c->add_option("--seed", o.seed, "random seed");
}
void add_caps(CLI::App* c, Opts& o) {
  c->add_option("--max-family", o.max_family, "family cap per step")->check(CLI::PositiveNumber);
  c->add_flag("--greedy", o.greedy, "follow a single order");
  c->add_option("--workers", o.workers, "worker threads (default: all cores)")->check(CLI::PositiveNumber);
  c->add_option("--trace", o.trace_out, "write the full trace as JSON");
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      v.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Usage("bad integer list: " + s);
    }
  }
  return v;
}

ExprPtr load_expr(const Opts& o) {
  int given = !o.expr_file.empty() + !o.dseq.empty() + !o.pairs.empty();
  if (given != 1) throw Usage("give exactly one of --expr, --dseq, --pairs");
  if (!o.expr_file.empty()) {
    std::ifstream f(o.expr_file);
    if (!f) throw Usage("cannot read " + o.expr_file);
    return make_expr(json::parse(f).get<ReflExpr>());
  }
  if (!o.dseq.empty()) {
    auto i = parse_list(o.dseq);
    return make_expr(shift(make_D(static_cast<int>(i.size()), i), o.shift));
  }
  if (o.n < 2) throw Usage("--pairs needs --n");
  std::vector<std::pair<int, int>> prs;
  std::stringstream ss(o.pairs);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto d = tok.find('-');
    if (d == std::string::npos) throw Usage("bad pair: " + tok);
    prs.push_back({std::stoi(tok.substr(0, d)), std::stoi(tok.substr(d + 1))});
  }
  return make_expr(ReflExpr::from_pairs(o.n, prs));
}

std::optional<Permutation> load_target(const Opts& o, int n, bool required) {
  if (o.target.empty()) {
    if (required) return Permutation::identity(n);
    return std::nullopt;
  }
  return parse_perm(o.target, n);
}

// stdout proper; std::cout is pointed at stderr when a report goes to "-"
std::streambuf* g_stdout = std::cout.rdbuf();

void write_text(const std::string& path, const std::string& s) {
  if (path.empty()) return;
  if (path == "-") {
    std::ostream(g_stdout) << s << std::flush;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Usage("cannot write " + path);
  f << s;
}
void write_json(const std::string& path, json j, const Opts& o) {
  if (path.empty()) return;
  j["seed"] = o.seed;
  write_text(path, j.dump(2) + "\n");
}

Caps caps_of(const Opts& o) {
  Caps c;
  c.max_family = o.max_family;
  c.greedy = o.greedy;
  c.workers = o.workers > 0 ? o.workers : default_workers();
  return c;
}

FnOnSub load_fn(const Opts& o) {
  if (o.in_file.empty()) throw Usage("--in FILE is required");
  std::ifstream f(o.in_file);
  if (!f) throw Usage("cannot read " + o.in_file);
  return fn_from_json(json::parse(f));
}

DecoTree tree_of(const Opts& o, int m) {
  if (!o.random_tree) return DecoTree{};
  std::mt19937_64 rng(o.seed);
  return DecoTree::random(m, rng);
}

// linear forms like "e1-e2" or "2e1+e3-e4"
Polynomial parse_form(const std::string& s, int n) {
  std::vector<mpq_class> c(n, 0);
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || s[i] == ' ')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::string coef;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef += s[i++];
    if (i >= s.size() || (s[i] != 'e' && s[i] != 'x')) throw Usage("bad linear form: " + s);
    ++i;
    std::string idx;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx += s[i++];
    if (idx.empty()) throw Usage("bad linear form: " + s);
    int v = std::stoi(idx);
    if (v < 1 || v > n) throw Usage("variable out of range in " + s);
    c[v - 1] += sign * (coef.empty() ? 1 : std::stoi(coef));
  }
  return Polynomial::linear(n, c);
}

json ranks_json(const std::vector<GradedRank>& r) {
  json a = json::array();
  for (auto& x : r) a.push_back(x.str());
  return a;
}

// ---- commands ----

int cmd_enumerate(const Opts& o) {
  auto t = load_expr(o);
  SubSet s = enumerate(t, load_target(o, t->n, false));
  std::cout << "t = " << t->str() << "\n" << s.size() << " subexpressions\n";
  for (auto b : s.members) std::cout << bit_string(b, s.m()) << "\n";
  write_json(o.json_out, json(s), o);
  return 0;
}

int cmd_graph(const Opts& o) {
  auto t = load_expr(o);
  SubSet s = enumerate(t, load_target(o, t->n, true));
  SubGraph g = graph(s);
  auto comps = components(g);
  std::cout << s.size() << " vertices, " << g.edges.size() << " edges, " << comps.size() << " components"
            << (is_forest(g) ? ", forest" : "") << "\n";
  for (auto& e : g.edges)
    std::cout << bit_string(s.members[e.a], s.m()) << " -- " << bit_string(s.members[e.b], s.m())
              << "  p=" << e.p.str() << " Y=" << set_string(e.Y) << "\n";
  write_text(o.dot_out, to_dot(g));
  json j = {{"command", "graph"}, {"vertices", s}, {"forest", is_forest(g)}};
  json ed = json::array();
  for (auto& e : g.edges) ed.push_back({{"a", e.a}, {"b", e.b}, {"p", {e.p.i, e.p.j}}, {"Y", positions(e.Y)}});
  j["edges"] = ed;
  j["components"] = comps;
  write_json(o.json_out, j, o);
  return 0;
}

int cmd_membership(const Opts& o) {
  FnOnSub g = load_fn(o);
  std::vector<Mask> phi;
  if (!o.phi.empty()) {
    std::stringstream ss(o.phi);
    std::string tok;
    while (std::getline(ss, tok, ',')) phi.push_back(parse_bits(tok));
  }
  Kind k = parse_kind(o.kind);
  auto r = membership(g, k, phi);
  int m = g.domain().m();
  std::cout << kind_name(k) << ": " << (r.member ? "member" : "not a member") << " (" << r.checks << " checks)\n";
  if (r.violation) std::cout << "violation: " << r.violation->str(m) << "\n";
  if (r.nonzero_on_phi) std::cout << "nonzero on Phi at " << bit_string(*r.nonzero_on_phi, m) << "\n";
  json j = {{"command", "membership"}, {"kind", kind_name(k)}, {"member", r.member}, {"checks", r.checks}};
  if (r.violation) j["violation"] = r.violation->str(m);
  write_json(o.json_out, j, o);
  if (o.expect == "member" && !r.member) return 1;
  if (o.expect == "non-member" && r.member) return 1;
  return 0;
}

int cmd_basis(const Opts& o) {
  auto t = load_expr(o);
  DecoTree tree = tree_of(o, t->size());
  auto B = basis(t, tree);
  int m = t->size();
  json arr = json::array();
  bool all_in = true;
  for (Mask L = 0; L < static_cast<Mask>(B.size()); ++L) {
    bool in = membership(B[L], Kind::Xt).member;
    all_in = all_in && in;
    std::cout << word_string(L, m) << (in ? "" : "  NOT IN X(t)") << "\n";
    for (int k = 0; k < B[L].domain().size(); ++k)
      if (!B[L].at(k).is_zero()) std::cout << "  " << bit_string(B[L].domain().members[k], m) << ": " << B[L].at(k) << "\n";
    arr.push_back({{"word", word_string(L, m)}, {"fn", B[L]}});
  }
  write_json(o.json_out, {{"command", "basis"}, {"expr", *t}, {"tree", tree.labels()}, {"basis", arr}}, o);
  return all_in ? 0 : 1;
}

int cmd_express(const Opts& o) {
  FnOnSub g = load_fn(o);
  const ExprPtr& t = g.domain().expr;
  DecoTree tree = tree_of(o, t->size());
  auto c = express_in_basis(g, tree);
  bool round = combine(t, tree, c) == g;
  json cj = json::object();
  for (auto& [L, p] : c) {
    if (p.is_zero()) continue;
    std::cout << word_string(L, t->size()) << ": " << p << "\n";
    cj[word_string(L, t->size())] = p;
  }
  std::cout << "round trip: " << (round ? "ok" : "FAILED") << "\n";
  write_json(o.json_out, {{"command", "express"}, {"coefficients", cj}, {"round_trip", round}}, o);
  return round ? 0 : 1;
}

int cmd_algo(const Opts& o, Mode mode) {
  auto t = load_expr(o);
  OrderContext ctx(t, *load_target(o, t->n, true));
  Trace tr = o.greedy ? run_algorithm(ctx, mode, caps_of(o)) : run_with_fallback(ctx, mode, caps_of(o));
  std::cout << "|Sub(t,w)| = " << ctx.size() << "\n"
            << "outcome: " << tr.outcome_str() << " at step " << tr.last_step << (tr.greedy ? " (greedy)" : "") << "\n";
  for (std::size_t k = 1; k < tr.steps.size(); ++k) std::cout << "step " << k << ": " << tr.steps[k].size() << " families\n";
  if (tr.P) std::cout << "P = " << tr.P->str() << "\n";
  if (!tr.P && !tr.steps.back().empty() && tr.last_step > 0) {
    std::set<std::string> ps;
    for (auto& e : tr.steps[tr.last_step]) ps.insert(e.P.str());
    for (auto& p : ps) std::cout << "surviving P = " << p << "\n";
  }
  json tj = trace_json(ctx, tr);
  if (!o.trace_out.empty()) write_json(o.trace_out, tj, o);
  json j = {{"command", mode == Mode::Plain ? "algo1" : "algo2"}, {"expr", *t}, {"size", ctx.size()},
            {"outcome", tr.outcome_str()}, {"last_step", tr.last_step}, {"greedy", tr.greedy}};
  if (tr.P) j["P"] = tr.P->str();
  write_json(o.json_out, j, o);
  return 0;
}

int cmd_balanced(const Opts& o) {
  auto t = load_expr(o);
  OrderContext ctx(t, *load_target(o, t->n, true));
  BalancedReport r = balanced_order(ctx);
  std::cout << "balanced: " << (r.balanced ? "yes" : "no") << "\n";
  if (r.witness) std::cout << "unbalanced member: " << bit_string(ctx.sub.members[*r.witness], ctx.m()) << "\n";
  json j = {{"command", "balanced"}, {"balanced", r.balanced}, {"total_order", r.total_order}, {"perfect", r.perfect}};
  if (r.balanced) {
    std::cout << "order is total: " << (r.total_order ? "yes" : "no") << ", perfect: " << (r.perfect ? "yes" : "no")
              << "\n";
    json ord = json::array();
    for (std::size_t k = 0; k < r.order.size(); ++k) {
      std::string b = bit_string(ctx.sub.members[r.order[k]], ctx.m());
      std::cout << b << "  positive=" << r.positives[k] << " dist=" << r.dists[k] << "\n";
      ord.push_back({{"eps", b}, {"positive", r.positives[k]}, {"dist", r.dists[k]}});
    }
    j["order"] = ord;
    if (r.perfect) {
      std::cout << "P = " << r.P.str() << "\n";
      j["P"] = r.P.str();
    }
  }
  write_json(o.json_out, j, o);
  return 0;
}

int cmd_acyclic(const Opts& o) {
  auto t = load_expr(o);
  OrderContext ctx(t, *load_target(o, t->n, true));
  AcyclicReport r = acyclic_rank(ctx);
  std::cout << r.vertices << " vertices, " << r.comps << " components, forest: " << (r.forest ? "yes" : "no") << "\n";
  json j = {{"command", "acyclic"}, {"forest", r.forest}, {"vertices", r.vertices}, {"components", r.comps}};
  if (r.forest) {
    std::cout << "P = " << r.P.str() << "\n";
    j["P"] = r.P.str();
  } else {
    std::cout << "cycle:";
    for (int v : r.cycle) std::cout << " " << bit_string(ctx.sub.members[v], ctx.m());
    std::cout << "\n";
  }
  write_json(o.json_out, j, o);
  return 0;
}

struct StOpts {
  std::string roots;
  int ambient = 0, size = 3, extra = 0;
  bool dual = false;
};

int cmd_st_pd(const Opts& o, const StOpts& s) {
  if (s.roots.empty() || s.ambient < 1) throw Usage("st pd needs --roots and --ambient");
  std::vector<Polynomial> x;
  std::stringstream ss(s.roots);
  std::string tok;
  while (std::getline(ss, tok, ',')) x.push_back(parse_form(tok, s.ambient));
  CoordChange cc;
  try {
    cc = coordinate_change(x);
  } catch (const DependentRoots&) {
    std::cout << "roots are linearly dependent\n";
    return 1;
  }
  int k = static_cast<int>(x.size());
  StringModule st(k, s.ambient - k);
  Resolution res = free_resolution(st.p_gens());
  std::cout << "|x| = " << k << " in " << s.ambient << " variables\n";
  for (int j = 0; j < k; ++j) std::cout << "z" << j + 1 << " = " << x[j] << "\n";
  for (std::size_t i = 0; i < res.ranks.size(); ++i) std::cout << "F" << i << ": " << res.ranks[i].str() << "\n";
  std::cout << "pd = " << res.pd << (res.minimal() ? "" : " (resolution not minimal)") << "\n";
  write_json(o.json_out,
             {{"command", "st pd"}, {"size", k}, {"ambient", s.ambient}, {"pd", res.pd}, {"ranks", ranks_json(res.ranks)},
              {"minimal", res.minimal()}},
             o);
  return res.exact && res.minimal() ? 0 : 1;
}

int cmd_st_resolve(const Opts& o, const StOpts& s) {
  if (s.size < 2) throw Usage("--size must be at least 2");
  if (s.dual && s.size < 3) throw Usage("--dual needs --size >= 3");
  StringModule st(s.size, s.extra);
  Resolution res = free_resolution(s.dual ? st.dual_kernel() : st.p_gens());
  std::cout << (s.dual ? "St dual" : "St") << ", |x| = " << s.size << ", " << s.extra << " extra variables\n";
  for (std::size_t i = 0; i < res.ranks.size(); ++i) {
    std::cout << "F" << i << ": " << res.ranks[i].str() << "\n";
    for (auto& g : res.maps[i]) std::cout << "  " << g.str() << "\n";
  }
  std::cout << "pd = " << res.pd << "\n";
  write_json(o.json_out,
             {{"command", "st resolve"}, {"size", s.size}, {"extra", s.extra}, {"dual", s.dual}, {"pd", res.pd},
              {"ranks", ranks_json(res.ranks)}, {"minimal", res.minimal()}},
             o);
  return res.exact && res.minimal() ? 0 : 1;
}

int cmd_st_check(const Opts& o, const StOpts& s) {
  if (s.size < 2) throw Usage("--size must be at least 2");
  std::mt19937_64 rng(o.seed);
  StReport r = st_check(s.size, s.extra, rng, s.size >= 3);
  json j = r;
  j["command"] = "st check";
  std::cout << j.dump(2) << "\n";
  write_json(o.json_out, j, o);
  return r.ok(s.size >= 3) ? 0 : 1;
}

struct DsOpts {
  int n = 3, k = 0;
  std::string perm;
};

std::vector<int> arrangement(const DsOpts& d) {
  if (d.perm.empty()) return identity_arrangement(d.n);
  auto i = parse_list(d.perm);
  if (static_cast<int>(i.size()) != d.n) throw Usage("--perm must have n entries");
  return i;
}

int cmd_dseq_report(const Opts& o, const DsOpts& d) {
  if (d.n < 3) throw Usage("--n must be at least 3");
  auto i = arrangement(d);
  DseqReport r = dseq_report(d.n, d.k, i, caps_of(o), o.seed);
  std::cout << "D(";
  for (std::size_t a = 0; a < i.size(); ++a) std::cout << (a ? "," : "") << i[a];
  std::cout << ")[" << r.k << "], n = " << d.n << "\n";
  for (auto& c : r.checks) std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  std::cout << "Algorithm 2: " << r.outcome << " at step " << r.last_step << "\n";
  if (r.P) std::cout << "P = " << r.P->str() << "\n";
  if (d.n >= 4) {
    std::cout << r.surviving << " surviving pairs, each P = 1+" << d.n << "v^-2: " << (r.surviving_P_ok ? "yes" : "no")
              << "\n";
    std::cout << "residual constraints:\n";
    for (auto& c : r.residual) std::cout << "  " << c << "\n";
    std::cout << "roots:";
    for (auto& x : r.roots) std::cout << " " << x;
    std::cout << " (independent: " << (r.independent ? "yes" : "no") << ")\n";
    if (r.st) std::cout << "pd St = " << r.st->pd_st << ", pd St dual = " << r.st->pd_dual << "\n";
  }
  std::cout << "verdict: " << (r.verdict ? "confirmed" : "NOT confirmed") << "\n";
  if (!o.dot_out.empty()) {
    SolutionTable tab = e_table(d.n, d.k, i);
    chord_label(tab);
    write_text(o.dot_out, table_dot(tab));
  }
  write_json(o.json_out, json(r), o);
  return r.verdict ? 0 : 1;
}

int cmd_dseq_table(const Opts& o, const DsOpts& d) {
  if (d.n < 3) throw Usage("--n must be at least 3");
  SolutionTable tab = e_table(d.n, d.k, arrangement(d));
  chord_label(tab);
  std::cout << "t = " << tab.t->str() << "\n";
  for (auto& r : tab.rows) std::cout << "e(" << r.l << ") = " << r.e.str() << "   bullet " << r.bullet.str() << "\n";
  for (auto& A : tab.chords())
    std::cout << "A=" << A.str() << "  e^{A,.}=" << tab.eA(A).str() << "  e^{.,A}=" << tab.Ae(A).str()
              << "  t(A)=" << tab.t_of(A).str() << "\n";
  write_text(o.dot_out, table_dot(tab));
  write_json(o.json_out, table_json(tab), o);
  return verify_solutions(tab) ? 0 : 1;
}

int cmd_paper_check(const Opts& o, int only, int fuzz) {
  CheckConfig cfg;
  cfg.seed = o.seed;
  cfg.workers = o.workers > 0 ? o.workers : default_workers();
  cfg.fuzz_cases = fuzz;
  std::vector<int> ids;
  if (only)
    ids = {only};
  else
    for (int i = 1; i <= 10; ++i) ids.push_back(i);
  bool ok = true;
  json arr = json::array();
  for (int id : ids) {
    auto r = run_criterion(id, cfg);
    std::cout << result_line(r) << std::endl;
    ok = ok && r.ok;
    arr.push_back(r);
  }
  write_json(o.json_out, {{"command", "paper-check"}, {"criteria", arr}, {"ok", ok}}, o);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bott-Samelson subexpression modules: enumeration, freeness algorithms, string modules"};
  app.require_subcommand(1);
  Opts o;

  auto* en = app.add_subcommand("enumerate", "list Sub(t) or Sub(t,w)");
  add_expr(en, o, true);
  add_out(en, o);

  auto* gr = app.add_subcommand("graph", "the graph Gr(Sub(t,w))");
  add_expr(gr, o, true);
  add_out(gr, o);
  gr->add_option("--dot", o.dot_out, "write DOT");

  auto* mem = app.add_subcommand("membership", "test membership of a function");
  mem->add_option("--in", o.in_file, "function JSON")->required();
  mem->add_option("--kind", o.kind, "xt | xw | xwphi | xW")->capture_default_str();
  mem->add_option("--phi", o.phi, "Phi as bit strings, comma separated");
  mem->add_option("--expect", o.expect, "member | non-member: exit 1 on mismatch")
      ->check(CLI::IsMember({"member", "non-member"}));
  add_out(mem, o);

  auto* bas = app.add_subcommand("basis", "the basis B_t for a decorated tree");
  add_expr(bas, o, false);
  add_out(bas, o);
  bas->add_flag("--random-tree", o.random_tree, "random tree labels from --seed");

  auto* ex = app.add_subcommand("express", "coefficients of a function in the basis");
  ex->add_option("--in", o.in_file, "function JSON over Sub(t)")->required();
  ex->add_flag("--random-tree", o.random_tree, "random tree labels from --seed");
  add_out(ex, o);

  auto* a1 = app.add_subcommand("algo1", "Algorithm 1 on Sub(t,w)");
  auto* a2 = app.add_subcommand("algo2", "Algorithm 2 on Sub(t,w)");
  for (auto* c : {a1, a2}) {
    add_expr(c, o, true);
    add_out(c, o);
    add_caps(c, o);
  }
  auto* bal = app.add_subcommand("balanced", "balancedness and the order of positive indices");
  auto* acy = app.add_subcommand("acyclic", "forest test and the acyclic rank");
  for (auto* c : {bal, acy}) {
    add_expr(c, o, true);
    add_out(c, o);
  }

  StOpts so;
  auto* st = app.add_subcommand("st", "string modules");
  st->require_subcommand(1);
  auto* stpd = st->add_subcommand("pd", "projective dimension of St on given roots");
  stpd->add_option("--roots", so.roots, "linear forms, e.g. e1-e2,e2-e3")->required();
  stpd->add_option("--ambient", so.ambient, "number of variables")->required();
  auto* stres = st->add_subcommand("resolve", "minimal free resolution of St or its dual");
  auto* stchk = st->add_subcommand("check", "the full string-module check");
  for (auto* c : {stres, stchk}) {
    c->add_option("--size", so.size, "|x|")->capture_default_str();
    c->add_option("--extra", so.extra, "extra variables")->capture_default_str();
  }
  stres->add_flag("--dual", so.dual, "resolve the dual");
  for (auto* c : {stpd, stres, stchk}) add_out(c, o);

  DsOpts dso;
  auto* ds = app.add_subcommand("dseq", "D-sequences");
  ds->require_subcommand(1);
  auto* dsr = ds->add_subcommand("report", "full non-freeness pipeline for D(i)[k]");
  auto* dst = ds->add_subcommand("table", "solutions and chord labels");
  for (auto* c : {dsr, dst}) {
    c->add_option("--n", dso.n, "length of the arrangement")->capture_default_str();
    c->add_option("--k", dso.k, "shift")->capture_default_str();
    c->add_option("--perm", dso.perm, "arrangement, e.g. 2,1,3,4");
    c->add_option("--dot", o.dot_out, "write the graph as DOT");
    add_out(c, o);
  }
  add_caps(dsr, o);

  int only = 0, fuzz = 1000;
  auto* pc = app.add_subcommand("paper-check", "run the acceptance checks");
  pc->add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 10));
  pc->add_option("--fuzz-cases", fuzz, "cases per identity family")->check(CLI::PositiveNumber);
  pc->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  add_out(pc, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (o.json_out == "-" || o.dot_out == "-") std::cout.rdbuf(std::cerr.rdbuf());

  try {
    if (*en) return cmd_enumerate(o);
    if (*gr) return cmd_graph(o);
    if (*mem) return cmd_membership(o);
    if (*bas) return cmd_basis(o);
    if (*ex) return cmd_express(o);
    if (*a1) return cmd_algo(o, Mode::Plain);
    if (*a2) return cmd_algo(o, Mode::Con);
    if (*bal) return cmd_balanced(o);
    if (*acy) return cmd_acyclic(o);
    if (*stpd) return cmd_st_pd(o, so);
    if (*stres) return cmd_st_resolve(o, so);
    if (*stchk) return cmd_st_check(o, so);
    if (*dsr) return cmd_dseq_report(o, dso);
    if (*dst) return cmd_dseq_table(o, dso);
    if (*pc) return cmd_paper_check(o, only, fuzz);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
