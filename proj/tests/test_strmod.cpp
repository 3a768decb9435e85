#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bsm/strmod.hpp"

using namespace bsm;

namespace {

ModElem random_member(const StringModule& st, std::mt19937_64& rng) {
  ModElem f(st.ambient);
  for (auto& g : st.p_gens()) f = f + g.times(random_poly(st.nvars(), static_cast<int>(rng() % 2), 2, rng));
  return f;
}

std::set<std::pair<int, std::vector<int>>> keyset(const std::vector<ModElem>& G) {
  std::set<std::pair<int, std::vector<int>>> s;
  for (auto& k : leading_keys(G)) s.insert({k.gen, std::vector<int>(k.mono.begin(), k.mono.end())});
  return s;
}

}  // namespace

TEST_CASE("coordinate change") {
  auto a = Polynomial::root(3, 1, 2), b = Polynomial::root(3, 2, 3);
  CoordChange c = coordinate_change({a, b});
  CHECK(c.to_new(a) == Polynomial::var(3, 1));
  CHECK(c.to_new(b) == Polynomial::var(3, 2));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    Polynomial f = random_poly(3, 2, 4, rng);
    CHECK(c.to_old(c.to_new(f)) == f);
    CHECK(c.to_new(c.to_old(f)) == f);
  }
  CoordChange id = coordinate_change({Polynomial::var(3, 1), Polynomial::var(3, 2)});
  for (int i = 1; i <= 3; ++i) CHECK(id.to_new(Polynomial::var(3, i)) == Polynomial::var(3, i));
  CHECK_THROWS_AS(coordinate_change({a, a}), DependentRoots);
  CHECK_THROWS_AS(coordinate_change({a, b, Polynomial::root(3, 1, 3)}), DependentRoots);
}

TEST_CASE("generators and membership") {
  StringModule s2(2, 0);
  auto g2 = s2.p_gens();
  REQUIRE(g2.size() == 1);
  CHECK(g2[0] == ModElem::gen(s2.ambient, 0, s2.x(1) * s2.x(2)));
  StringModule s3(3, 0);
  CHECK(s3.p(1, 3) == ModElem::from_coords(s3.ambient, {s3.x(1) * s3.x(3), s3.x(1) * s3.x(3)}));
  CHECK_FALSE(s3.member(ModElem::gen(s3.ambient, 0, s3.x(1))));
  for (auto& p : s3.p_gens()) CHECK(s3.member(p));
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 5; ++n) {
    StringModule st(n, 1);
    for (int k = 0; k < 10; ++k) CHECK(st.member(random_member(st, rng)));
  }
}

TEST_CASE("reduction") {
  StringModule st(3, 0);
  auto P = st.p_gens();
  CHECK(normal_form(st.p(1, 2), {st.p(1, 2)}).is_zero());
  ModElem triple = st.p(1, 2).times(st.x(3)) + st.p(2, 3).times(st.x(1)) - st.p(1, 3).times(st.x(2));
  CHECK(triple.is_zero());
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 5; ++n) {
    StringModule s(n, 1);
    auto G = s.p_gens();
    for (int k = 0; k < 15; ++k) {
      ModElem f = random_member(s, rng);
      Reduction r = reduce(f, G);
      CHECK(r.remainder.is_zero());
      // f = sum q_i g_i
      ModElem back(s.ambient);
      for (std::size_t i = 0; i < G.size(); ++i) back = back + G[i].times(r.quotients[i]);
      CHECK(back == f);
    }
  }
}

TEST_CASE("Groebner bases") {
  for (int n = 2; n <= 5; ++n)
    for (int extra = 0; extra <= 1; ++extra) {
      StringModule st(n, extra);
      auto P = st.p_gens();
      CHECK(is_groebner(P));
      CHECK(keyset(buchberger(P)) == keyset(P));
    }
  StringModule s4(4, 0);
  auto Q = s4.q_gens();
  CHECK(is_groebner(Q));
  auto K = kernel(s4.phi_images(), s4.pairs);
  CHECK(same_submodule(K, Q));
  StringModule s3(3, 0);
  CHECK(buchberger({s3.p(1, 2)}) == std::vector<ModElem>{s3.p(1, 2)});
}

TEST_CASE("resolutions and projective dimension") {
  for (int n = 2; n <= 5; ++n) {
    StringModule st(n, 5 - n);
    Resolution r = free_resolution(st.p_gens());
    CHECK(r.exact);
    CHECK(r.minimal());
    CHECK(r.pd == n - 2);
  }
  StringModule s2(2, 0);
  CHECK(free_resolution(s2.p_gens()).ranks == std::vector<GradedRank>{GradedRank::monomial(-4)});
  // a free module
  StringModule s3(3, 0);
  Resolution fr = free_resolution({ModElem::gen(s3.ambient, 0, Polynomial::constant(3, 1)),
                                   ModElem::gen(s3.ambient, 1, Polynomial::constant(3, 1))});
  CHECK(fr.pd == 0);
  // the dual for |x| = 3: 0 -> R -> R(2)^3 -> St dual -> 0
  Resolution d = free_resolution(s3.dual_kernel());
  CHECK(d.pd == 1);
  CHECK(d.ranks == std::vector<GradedRank>{GradedRank::monomial(2, 3), GradedRank::monomial(0)});
  // shuffled priorities give the same Betti numbers
  std::mt19937_64 rng(4);
  StringModule s4(4, 0);
  Resolution a = free_resolution(s4.p_gens()), b = free_resolution(s4.p_gens(), 8, &rng);
  CHECK(a.ranks == b.ranks);
}

TEST_CASE("dual toolkit") {
  StringModule st(3, 0);
  ModElem want = ModElem::gen(st.dual, st.pair_gen(1, 2), st.x(1)) - ModElem::gen(st.dual, st.pair_gen(2, 3), st.x(3));
  CHECK(st.theta(2) == want);
  for (int n = 3; n <= 5; ++n) {
    StringModule s(n, 0);
    ModElem sum(s.dual);
    for (int h = 1; h <= n; ++h) sum = sum + s.theta(h).times(s.x(h));
    CHECK(sum.is_zero());
    for (auto& t : s.thetas())
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          for (int k = j + 1; k <= n; ++k) CHECK(s.thetah_relation(t, i, j, k).is_zero());
    CHECK(is_groebner(s.thetas()));
    auto K = s.psi_kernel();
    CHECK(same_submodule(K, {s.w()}));
  }
}

TEST_CASE("full report") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 4; ++n) {
    StReport r = st_check(n, 1, rng, n >= 3);
    CHECK(r.ok(n >= 3));
    nlohmann::json j = r;
    CHECK(j["pd_st"] == n - 2);
  }
}
