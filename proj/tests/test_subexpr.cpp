#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bsm/subexpr.hpp"

using namespace bsm;

namespace {

ExprPtr E(int n, std::vector<std::pair<int, int>> p) { return make_expr(ReflExpr::from_pairs(n, p)); }
ExprPtr two_point() { return E(4, {{1, 3}, {2, 4}, {1, 2}, {3, 4}, {1, 4}, {2, 3}}); }

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

// plain product of the chosen entries, left to right
Permutation product_oracle(const ReflExpr& t, Mask b) {
  Permutation p = Permutation::identity(t.n);
  for (int i = 1; i <= t.size(); ++i)
    if (b & bit(i)) p = p * t[i].perm();
  return p;
}

int rel_card_oracle(const std::vector<int>& Y, std::vector<int> X) {
  std::sort(X.rbegin(), X.rend());
  int c = 0;
  for (std::size_t k = 0; k < X.size(); k += 2) c += std::count(Y.begin(), Y.end(), X[k]);
  return c;
}

}  // namespace

TEST_CASE("prefix data") {
  auto t = E(3, {{1, 2}, {2, 3}});
  Subexpr e(t, "11");
  CHECK(e.before(2) == Permutation::transposition(3, 1, 2));
  CHECK(e.conj(2) == Reflection(3, 1, 3));
  CHECK(e.to(2) == Polynomial::root(3, 1, 3));
  CHECK(e.before(1).is_identity());
  CHECK(e.conj(1) == Reflection(3, 1, 2));
  CHECK(e.to(1) == Polynomial::root(3, 1, 2));
  Subexpr z(t, "00");
  for (int i = 1; i <= 2; ++i) {
    CHECK(z.before(i).is_identity());
    CHECK(z.to(i) == (*t)[i].root());
  }
}

TEST_CASE("eps->i and eps<-i are +- the root of eps^i") {
  std::mt19937_64 rng(3);
  for (int c = 0; c < 100; ++c) {
    auto t = random_expr(4, 1 + static_cast<int>(rng() % 7), rng);
    Subexpr e(t, static_cast<Mask>(rng() % (1u << t->size())));
    for (int i = 1; i <= t->size(); ++i) {
      Polynomial r = e.conj(i).root();
      CHECK((e.to(i) == r || e.to(i) == -r));
      CHECK((e.from(i) == e.to(i) || e.from(i) == -e.to(i)));
    }
    CHECK(e.target() == product_oracle(*t, e.bits()));
  }
}

TEST_CASE("fold and M_p") {
  std::mt19937_64 rng(5);
  for (int c = 0; c < 200; ++c) {
    int m = 1 + static_cast<int>(rng() % 8);
    auto t = random_expr(4, m, rng);
    Mask full = (1u << m) - 1;
    Subexpr e(t, static_cast<Mask>(rng()) & full);
    Mask X = static_cast<Mask>(rng()) & full, Y = static_cast<Mask>(rng()) & full;
    CHECK(e.fold(X).fold(Y) == e.fold(X ^ Y));
    CHECK(e.fold(0) == e);
    for (auto& [p, M] : e.Msets()) {
      Mask Z = static_cast<Mask>(rng()) & M;
      Subexpr f = e.fold(Z);
      for (int k = 1; k <= m; ++k) {
        int le = popcount(Z & ((bit(k) << 1) - 1)) % 2;
        CHECK(f.upto(k) == (le ? p.perm() * e.upto(k) : e.upto(k)));
      }
      // (f_Z eps)^. = f_Z (eps^.)
      CHECK(f.bullet() == fold_expr(e.bullet(), positions(Z)));
      // M_p is constant on the fold
      CHECK(f.M(p) == M);
    }
  }
}

TEST_CASE("enumerate") {
  auto id4 = Permutation::identity(4);
  SubSet s = enumerate(two_point(), id4);
  CHECK(s.members == std::vector<Mask>{parse_bits("000000"), parse_bits("111111")});
  CHECK(enumerate(E(2, {{1, 2}, {1, 2}}), Permutation::identity(2)).members ==
        std::vector<Mask>{parse_bits("00"), parse_bits("11")});
  for (int n = 3; n <= 6; ++n)
    for (int k = 1 - n; k <= n - 1; ++k) {
      std::vector<int> i(n);
      std::iota(i.begin(), i.end(), 1);
      auto t = make_expr(shift(make_D(n, i), k));
      CHECK(enumerate(t, Permutation::identity(n)).size() == 2 * n - 1);
    }
  // brute-force oracle, and the canonical order is lexicographic on bit strings
  std::mt19937_64 rng(9);
  for (int c = 0; c < 30; ++c) {
    int m = 1 + static_cast<int>(rng() % 9);
    auto t = random_expr(4, m, rng);
    Permutation w = product_oracle(*t, static_cast<Mask>(rng() % (1u << m)));
    SubSet s2 = enumerate(t, w);
    std::vector<std::string> got, want;
    for (auto b : s2.members) got.push_back(bit_string(b, m));
    for (Mask b = 0; b < (1u << m); ++b)
      if (product_oracle(*t, b) == w) want.push_back(bit_string(b, m));
    std::sort(want.begin(), want.end());
    CHECK(got == want);
    CHECK(enumerate(t, std::nullopt).size() == (1 << m));
  }
  CHECK_THROWS_AS(enumerate(random_expr(3, 12, rng), std::nullopt, 10), CapExceeded);
}

TEST_CASE("relative cardinality") {
  CHECK(rel_card(mask_of({2, 3, 9}), mask_of({1, 2, 3, 4, 7, 9})) == 2);
  CHECK(rel_card(0, mask_of({1, 5})) == 0);
  CHECK_THROWS(rel_card(mask_of({2}), mask_of({1, 3})));
  std::mt19937_64 rng(17);
  for (int c = 0; c < 500; ++c) {
    Mask X = static_cast<Mask>(rng() & 0x3ff);
    if (!X) continue;
    Mask Y = static_cast<Mask>(rng()) & X, Z = static_cast<Mask>(rng()) & X;
    CHECK(rel_card(Y, X) == rel_card_oracle(positions(Y), positions(X)));
    CHECK((rel_card(Y ^ Z, X) + rel_card(Y, X) + rel_card(Z, X)) % 2 == 0);
  }
}

TEST_CASE("equivalence classes") {
  auto t = E(3, {{1, 2}, {1, 3}, {1, 2}});
  Subexpr e(t, "000");
  CHECK(equiv_class(e, Reflection(3, 2, 3), true).members == std::vector<Mask>{0});
  SubSet c = equiv_class(e, Reflection(3, 1, 2), true);
  CHECK(c.members == std::vector<Mask>{parse_bits("000"), parse_bits("101")});
  CHECK(equiv_class(e, Reflection(3, 1, 2), false).size() == 4);
  // M_p is constant on a class, and the classes partition Sub(t,w)
  std::mt19937_64 rng(23);
  for (int r = 0; r < 30; ++r) {
    auto u = random_expr(3, 1 + static_cast<int>(rng() % 7), rng);
    SubSet all = enumerate(u, Permutation::identity(3));
    for (int k = 0; k < all.size(); ++k)
      for (auto& [p, M] : all.at(k).Msets()) {
        SubSet cl = equiv_class(all.at(k), p, true);
        for (auto b : cl.members) {
          CHECK(all.contains(b));
          CHECK(Subexpr(u, b).M(p) == M);
          CHECK(equiv_class(Subexpr(u, b), p, true).members == cl.members);
        }
      }
  }
}

TEST_CASE("graphs") {
  SubGraph g = graph(enumerate(two_point(), Permutation::identity(4)));
  CHECK(g.edges.empty());
  CHECK(components(g).size() == 2);
  auto D4 = make_expr(make_D(4, {1, 2, 3, 4}));
  SubGraph c = graph(enumerate(D4, Permutation::identity(4)));
  CHECK(c.vertices.size() == 7);
  CHECK(c.edges.size() == 7);
  CHECK(components(c).size() == 1);
  CHECK_FALSE(is_forest(c));
  for (auto& a : c.adj) CHECK(a.size() == 2);
  for (auto& e : c.edges) {
    CHECK(popcount(e.Y) >= 2);
    CHECK(popcount(e.Y) % 2 == 0);
    CHECK((c.vertices.members[e.a] ^ c.vertices.members[e.b]) == e.Y);
    CHECK((c.vertices.at(e.a).M(e.p) & e.Y) == e.Y);
  }
  std::string dot = to_dot(c);
  CHECK(dot.find("graph Gr {") == 0);
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 1 + 7 + 7 + 1);
  SubGraph one = graph(enumerate(E(2, {{1, 2}}), Permutation::identity(2)));
  CHECK(one.vertices.size() == 1);
  CHECK(one.edges.empty());
}

TEST_CASE("frozen sets") {
  auto t = make_expr(make_D(4, {1, 2, 3, 4}));
  SubSet all = enumerate(t, Permutation::identity(4));
  Subexpr e = all.at(0);
  CHECK(frozen_set(all, e, 0, FrozenMode::Freeze).members == all.members);
  CHECK(frozen_set(all, e, bit(3), FrozenMode::Unfreeze).members == std::vector<Mask>{e.bits()});
  CHECK(frozen_set(all, e, 0, FrozenMode::Unfreeze).members == std::vector<Mask>{e.bits()});
  // unfreezing X inside M_p gives the even folds
  for (int k = 0; k < all.size(); ++k) {
    Subexpr d = all.at(k);
    for (auto& [p, M] : d.Msets()) {
      std::set<Mask> want;
      for (Mask Y = M;; Y = (Y - 1) & M) {
        if (popcount(Y) % 2 == 0) want.insert(d.bits() ^ Y);
        if (!Y) break;
      }
      auto got = frozen_set(all, d, M, FrozenMode::Unfreeze).members;
      CHECK(std::set<Mask>(got.begin(), got.end()) == want);
    }
  }
}

TEST_CASE("balance") {
  auto t = E(4, {{1, 2}, {2, 3}, {1, 2}, {3, 4}});
  Balance b = balance(Subexpr(t, "0000"));
  CHECK(b.positive == 0);
  CHECK(b.balanced);
  std::mt19937_64 rng(31);
  for (int c = 0; c < 40; ++c) {
    std::vector<Reflection> e;
    int m = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < m; ++i) {
      int a = 1 + static_cast<int>(rng() % 3);
      e.emplace_back(4, a, a + 1);
    }
    auto u = make_expr(ReflExpr(4, e));
    Permutation w = product_oracle(*u, static_cast<Mask>(rng() % (1u << m)));
    CHECK(balanced_set(enumerate(u, w)));
  }
  // positive index: length drops
  Subexpr d(t, "1010");
  Balance bd = balance(d);
  CHECK(bd.positive == bit(3));
}

TEST_CASE("json") {
  SubSet s = enumerate(two_point(), Permutation::identity(4));
  nlohmann::json j = s;
  CHECK(j["members"] == nlohmann::json::array({"000000", "111111"}));
}
