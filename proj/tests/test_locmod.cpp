#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bsm/locmod.hpp"

using namespace bsm;

namespace {

ExprPtr E(int n, std::vector<std::pair<int, int>> p) { return make_expr(ReflExpr::from_pairs(n, p)); }
ExprPtr two_point() { return E(4, {{1, 3}, {2, 4}, {1, 2}, {3, 4}, {1, 4}, {2, 3}}); }
Polynomial one(int n) { return Polynomial::constant(n, 1); }

ExprPtr random_expr(int n, int m, std::mt19937_64& rng) {
  std::vector<Reflection> e;
  for (int i = 0; i < m; ++i) {
    int a = 1 + static_cast<int>(rng() % n), b;
    do b = 1 + static_cast<int>(rng() % n);
    while (b == a);
    e.emplace_back(n, a, b);
  }
  return make_expr(ReflExpr(n, e));
}

}  // namespace

TEST_CASE("res_tensor") {
  auto t = E(2, {{1, 2}});
  FnOnSub g = res_tensor(t, {one(2), one(2)});
  CHECK(g(0) == one(2));
  CHECK(g(1) == one(2));
  FnOnSub h = res_tensor(t, {one(2), Polynomial::var(2, 1)});
  CHECK(h(0) == Polynomial::var(2, 1));
  CHECK(h(1) == Polynomial::var(2, 2));
  CHECK(h(0) - h(1) == Polynomial::root(2, 1, 2));
  // a_i = alpha_{t_i}, others 1 -> eps -> eps^{->i}
  std::mt19937_64 rng(1);
  for (int c = 0; c < 20; ++c) {
    auto u = random_expr(4, 1 + static_cast<int>(rng() % 5), rng);
    int i = 1 + static_cast<int>(rng() % u->size());
    std::vector<Polynomial> a(u->size() + 1, one(4));
    a[i - 1] = (*u)[i].root();
    FnOnSub r = res_tensor(u, a);
    for (int k = 0; k < r.domain().size(); ++k) CHECK(r.at(k) == r.domain().at(k).to(i));
    CHECK(membership(r, Kind::Xt).member);
  }
}

TEST_CASE("sigma") {
  std::mt19937_64 rng(2);
  auto t = random_expr(3, 4, rng);
  FnOnSub g = FnOnSub::from(full_domain(t), [&](const Subexpr& e) { return random_poly(3, 1, 2, rng) + Polynomial::constant(3, e.bits()); });
  Subexpr e(t, "0110");
  CHECK(sigma(g, e, 0, SigmaVariant::Full) == g(e.bits()));
  CHECK(sigma(g, e, 0, SigmaVariant::Even) == g(e.bits()));
  CHECK(sigma(g, e, bit(2), SigmaVariant::Full) == g(e.bits()) - g(e.bits() ^ bit(2)));
  // images of Res satisfy the divisibility
  for (int c = 0; c < 30; ++c) {
    auto u = random_expr(3, 1 + static_cast<int>(rng() % 5), rng);
    std::vector<Polynomial> a;
    for (int i = 0; i <= u->size(); ++i) a.push_back(random_poly(3, static_cast<int>(rng() % 2), 2, rng));
    FnOnSub r = res_tensor(u, a);
    for (int k = 0; k < r.domain().size(); ++k) {
      Subexpr d = r.domain().at(k);
      for (auto& [p, M] : d.Msets())
        for (Mask X = M;; X = (X - 1) & M) {
          CHECK(divisible_by_power(sigma(r, d, X, SigmaVariant::Full), p.root(), popcount(X)));
          if (!X) break;
        }
    }
  }
}

TEST_CASE("membership") {
  auto t = two_point();
  SubSet s = enumerate(t, Permutation::identity(4));
  FnOnSub ind = FnOnSub::indicator(s, {parse_bits("000000")});
  CHECK(membership(ind, Kind::Xw).member);
  for (Kind k : {Kind::Xt, Kind::Xw, Kind::XW}) {
    SubSet dom = k == Kind::Xt ? full_domain(t) : s;
    CHECK(membership(FnOnSub(dom), k).member);
  }
  FnOnSub ext = ind.extend_to(full_domain(t));
  auto r = membership(ext, Kind::Xt);
  CHECK_FALSE(r.member);
  REQUIRE(r.violation);
  // the witness really fails
  Subexpr w(t, r.violation->eps);
  CHECK_FALSE(divisible_by_power(sigma(ext, w, r.violation->X, SigmaVariant::Full), r.violation->p.root(),
                                 r.violation->exponent));
  for (auto& b : basis(t, DecoTree{})) CHECK(membership(b, Kind::Xt).member);
}

TEST_CASE("copy, concentration, restriction, divided difference") {
  auto t = E(2, {{1, 2}});
  auto t0 = prefix_expr(t);
  FnOnSub c = FnOnSub::constant(full_domain(t0), one(2));
  CHECK(copy_up(c, t) == FnOnSub::constant(full_domain(t), one(2)));
  FnOnSub n0 = nabla_up(c, t, 0);
  CHECK(n0(0) == Polynomial::root(2, 1, 2));
  CHECK(n0(1).is_zero());
  std::mt19937_64 rng(4);
  for (int k = 0; k < 30; ++k) {
    auto u = random_expr(4, 1 + static_cast<int>(rng() % 5), rng);
    auto up = prefix_expr(u);
    DecoTree tr = DecoTree::random(up->size(), rng);
    auto B = basis(up, tr);
    FnOnSub g = random_poly(4, 1, 2, rng) * B[rng() % B.size()];
    for (int e = 0; e <= 1; ++e) {
      CHECK(restrict_last(copy_up(g, u), e) == g);
      FnOnSub n = nabla_up(g, u, e);
      CHECK(divdiff_last(n, e) == g);
      CHECK(restrict_last(n, 1 - e).is_zero());
      CHECK(membership(n, Kind::Xt).member);
      CHECK(membership(copy_up(g, u), Kind::Xt).member);
      // vanishing on the other value means g = (g down_e) nabla_e
      CHECK(nabla_up(divdiff_last(n, e), u, e) == n);
    }
    FnOnSub h = B[rng() % B.size()];
    FnOnSub big = copy_up(h, u) + nabla_up(h, u, 1);
    CHECK(membership(restrict_last(big, 0), Kind::Xt).member);
    CHECK(membership(divdiff_last(big, 0), Kind::Xt).member);
  }
}

TEST_CASE("bases") {
  auto t0 = make_expr(ReflExpr(3, {}));
  auto B0 = basis(t0, DecoTree{});
  REQUIRE(B0.size() == 1);
  CHECK(B0[0] == FnOnSub::constant(full_domain(t0), one(3)));
  auto t = E(3, {{1, 2}, {2, 3}});
  DecoTree tree;
  tree.set("", 1);
  tree.set("N", 0);
  // L = (N, N): the nabla_1 of the nabla_0 of 1
  FnOnSub b = basis_element(t, tree, bit(1) | bit(2));
  auto t1 = prefix_expr(t), tz = prefix_expr(t1);
  FnOnSub want = nabla_up(nabla_up(FnOnSub::constant(full_domain(tz), one(3)), t1, 0), t, 1);
  CHECK(b == want);
  CHECK(word_string(bit(1) | bit(2), 2) == "NN");
}

TEST_CASE("express_in_basis") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 25; ++k) {
    int m = 1 + static_cast<int>(rng() % 5);
    auto t = random_expr(4, m, rng);
    DecoTree tree = DecoTree::random(m, rng);
    auto B = basis(t, tree);
    Mask L0 = static_cast<Mask>(rng() % B.size());
    auto c = express_in_basis(B[L0], tree);
    for (auto& [L, p] : c) CHECK(p == (L == L0 ? one(4) : Polynomial(4)));
    auto u = express_in_basis(res_tensor(t, std::vector<Polynomial>(m + 1, one(4))), tree);
    for (auto& [L, p] : u) CHECK(p == (L == 0 ? one(4) : Polynomial(4)));
    std::map<Mask, Polynomial> coeffs;
    for (int r = 0; r < 3; ++r) coeffs[static_cast<Mask>(rng() % B.size())] = random_poly(4, 1 + static_cast<int>(rng() % 2), 3, rng);
    std::erase_if(coeffs, [](auto& kv) { return kv.second.is_zero(); });
    auto back = express_in_basis(combine(t, tree, coeffs), tree);
    std::erase_if(back, [](auto& kv) { return kv.second.is_zero(); });
    CHECK(back == coeffs);
  }
}

TEST_CASE("mu and the inner product") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 15; ++k) {
    int m = 1 + static_cast<int>(rng() % 5);
    auto t = random_expr(4, m, rng);
    Subexpr any(t, static_cast<Mask>(rng() % (1u << m)));
    SubSet sw = enumerate(t, any.target());
    auto B = basis(t, DecoTree::random(m, rng));
    for (int e = 0; e < sw.size(); ++e) {
      FnOnSub me = mu(sw.at(e), sw);
      for (int d = 0; d < sw.size(); ++d) CHECK(me.at(d) == (d == e ? o_of(sw.at(e)) : Polynomial(4)));
      FnOnSub g = B[rng() % B.size()].restrict_to(sw);
      CHECK(inner(me, g) == RationalFn(g.at(e), {}));
      FnOnSub h = B[rng() % B.size()].restrict_to(sw);
      CHECK(inner(g, h) == inner(h, g));
    }
    auto up = upper_samples(sw);
    for (auto& u : up) {
      CHECK(membership(u, Kind::XW).member);
      for (int r = 0; r < 3; ++r) CHECK(inner(u, B[rng() % B.size()].restrict_to(sw)).in_R());
    }
  }
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(10);
  auto t = random_expr(4, 4, rng);
  auto B = basis(t, DecoTree::random(4, rng));
  for (auto& b : B) {
    nlohmann::json j = b;
    CHECK(fn_from_json(nlohmann::json::parse(j.dump())) == b);
  }
  CHECK(parse_kind("xw") == Kind::Xw);
  CHECK_THROWS(parse_kind("nope"));
}
