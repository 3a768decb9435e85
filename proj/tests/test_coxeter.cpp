#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bsm/coxeter.hpp"

using namespace bsm;

namespace {

ReflExpr E(int n, std::vector<std::pair<int, int>> p) { return ReflExpr::from_pairs(n, p); }

std::vector<int> random_arrangement_of(int n, int len, std::mt19937_64& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  v.resize(len);
  return v;
}

// inversion count by definition
int inv_oracle(const std::vector<int>& a) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) c += a[i] > a[j];
  return c;
}

}  // namespace

TEST_CASE("group operations") {
  Permutation p = Permutation::transposition(3, 1, 2) * Permutation::transposition(3, 1, 3);
  CHECK(p.images() == std::vector<int>{3, 1, 2});
  CHECK(p.cycles() == std::vector<std::vector<int>>{{1, 3, 2}});
  CHECK(Permutation::identity(3).cycles().empty());
  CHECK(Permutation::transposition(3, 1, 2).length() == 1);
  CHECK(p * p.inverse() == Permutation::identity(3));
  CHECK(conjugate_reflection(Permutation::from_cycles(4, {{1, 2, 3}}), Reflection(4, 1, 3)) == Reflection(4, 1, 2));
}

TEST_CASE("length changes under every reflection") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    auto a = random_arrangement_of(5, 5, rng);
    Permutation u(a);
    CHECK(u.length() == inv_oracle(a));
    int i = 1 + static_cast<int>(rng() % 4), j = i + 1 + static_cast<int>(rng() % (5 - i));
    Permutation tu = Permutation::transposition(5, i, j) * u;
    CHECK(tu.length() != u.length());
  }
}

TEST_CASE("roots") {
  CHECK(root_of(Reflection(3, 1, 3)) == Polynomial::var(3, 1) - Polynomial::var(3, 3));
  CHECK(act(Permutation::transposition(3, 1, 2), root_of(Reflection(3, 1, 3))) == root_of(Reflection(3, 2, 3)));
  Reflection t(4, 2, 4);
  CHECK(root_of(t).swapped(2, 4) == -root_of(t));
  // alpha_{w t w^-1} = +- w alpha_t
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    Permutation w(random_arrangement_of(4, 4, rng));
    Polynomial wa = act(w, root_of(t)), r = root_of(conjugate_reflection(w, t));
    CHECK((wa == r || wa == -r));
  }
}

TEST_CASE("sequence calculus") {
  ReflExpr t = E(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(shift(t, 1) == E(4, {{2, 3}, {3, 4}, {1, 2}}));
  CHECK(shift(shift(t, 2), 5) == shift(t, 7));
  CHECK(ddot(E(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}})) == E(5, {{1, 2}, {4, 5}, {3, 4}, {2, 3}}));
  CHECK(seq::shift1(std::vector<int>{1, 2, 3, 4}, 1) == std::vector<int>{1, 3, 4, 2});
  CHECK(truncate(t) == E(4, {{1, 2}, {2, 3}}));
  CHECK_THROWS(ddot(ReflExpr(3, {})));
  CHECK_THROWS(shift1(ReflExpr(3, {}), 1));
  std::mt19937_64 rng(8);
  for (int c = 0; c < 200; ++c) {
    std::vector<Reflection> e;
    int m = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < m; ++i) {
      auto a = random_arrangement_of(5, 2, rng);
      e.emplace_back(5, a[0], a[1]);
    }
    ReflExpr x(5, e);
    int k = static_cast<int>(rng() % 31) - 15;
    CHECK(reverse(shift(x, k)) == shift(reverse(x), -k));
    // reverse is x'_i = x_{1-i} on the periodic model
    ReflExpr r = reverse(x);
    for (int i = 1; i <= m; ++i) CHECK(r[i] == x[cyc(1 - i, m)]);
  }
}

TEST_CASE("folding expressions") {
  ReflExpr D = make_D(3, {1, 2, 3});
  CHECK(D == E(3, {{1, 2}, {1, 3}, {1, 2}, {2, 3}, {1, 3}}));
  ReflExpr f = fold_expr(D, {1, 3});
  CHECK(f == E(3, {{1, 2}, {2, 3}, {1, 2}, {2, 3}, {1, 3}}));
  CHECK(f == shift(make_D(3, {2, 3, 1}), -1));
  CHECK(fold_expr(D, {}) == D);
  CHECK_THROWS(fold_expr(D, {1, 2}));
  // odd |X|: the interval after the last element is conjugated as well
  CHECK(fold_expr(E(3, {{1, 2}, {1, 3}}), {1}) == E(3, {{1, 2}, {2, 3}}));
  CHECK(fold_expr(E(3, {{1, 3}, {1, 2}}), {2}) == E(3, {{1, 3}, {1, 2}}));
}

TEST_CASE("a, b, c and D sequences") {
  CHECK(make_b(4, {1, 2, 3, 4}) == E(4, {{1, 2}, {2, 3}, {3, 4}}));
  CHECK(make_a(4, {1, 2, 3, 4}).size() == 3);
  CHECK(make_c(4, {1, 2, 3, 4}).size() == 4);
  CHECK(make_D(4, {1, 2, 3, 4}).size() == 7);
  CHECK(make_D(4, {1, 2, 3, 4}).M(Reflection(4, 1, 4)) == std::vector<int>{3, 7});
  CHECK_THROWS(make_D(3, {1, 1, 2}));
  CHECK_THROWS(make_c(3, {1}));
}

TEST_CASE("relations between the sequences") {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 100; ++c) {
    int n = 3 + static_cast<int>(rng() % 5), m = 3 + static_cast<int>(rng() % (n - 2));
    auto i = random_arrangement_of(n, m, rng);
    int k = 1 + static_cast<int>(rng() % (m - 1));  // 1..m-1 as a count
    std::vector<int> head(i.begin(), i.begin() + k), tail_a{i[0]}, tail_b(i.begin() + k - 1, i.end());
    tail_a.insert(tail_a.end(), i.begin() + k, i.end());
    CHECK(make_a(n, i) == concat(make_a(n, head), make_a(n, tail_a)));
    CHECK(make_b(n, i) == concat(make_b(n, head), make_b(n, tail_b)));
    if (k >= 2) {
      std::vector<int> tail_c = tail_b;
      tail_c.push_back(i[0]);
      CHECK(make_c(n, i) == concat(make_b(n, head), make_b(n, tail_c)));
    }
    // conjugating every entry by sigma
    Permutation s(random_arrangement_of(n, n, rng));
    std::vector<int> si;
    for (int x : i) si.push_back(s(x));
    for (char kind : {'a', 'b'}) {
      ReflExpr t = make_sequence(kind, n, i), want = make_sequence(kind, n, si);
      std::vector<Reflection> conj;
      for (auto& r : t.entries) conj.push_back(conjugate_reflection(s, r));
      CHECK(ReflExpr(n, conj) == want);
    }
    // (MD) and the bound on other reflections
    ReflExpr D = make_D(n, i);
    CHECK(D.M(Reflection(n, i[0], i[m - 1])) == std::vector<int>{m - 1, 2 * m - 1});
    CHECK(D.M(Reflection(n, i[0], i[1])) == std::vector<int>{1, m});
    for (auto& p : D.support())
      if (p != Reflection(n, i[0], i[m - 1]) && p != Reflection(n, i[0], i[1])) CHECK(D.M(p).size() <= 1);
  }
}

TEST_CASE("products of b-blocks are cycles") {
  // b(i_1..i_r) multiplies to a single r-cycle
  std::mt19937_64 rng(13);
  for (int c = 0; c < 50; ++c) {
    int n = 6, r = 2 + static_cast<int>(rng() % 5);
    auto i = random_arrangement_of(n, r, rng);
    Permutation prod = Permutation::identity(n);
    for (auto& t : make_b(n, i).entries) prod = prod * t.perm();
    // oracle: apply the transpositions right to left to every point
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    for (int k = r - 2; k >= 0; --k) {
      for (auto& x : img) {
        if (x == i[k]) x = i[k + 1];
        else if (x == i[k + 1]) x = i[k];
      }
    }
    CHECK(prod == Permutation(img));
    CHECK(prod.cycles().size() == 1);
    CHECK(static_cast<int>(prod.cycles()[0].size()) == r);
  }
}

TEST_CASE("json and parsing") {
  ReflExpr t = E(4, {{1, 3}, {2, 4}, {1, 2}, {3, 4}, {1, 4}, {2, 3}});
  nlohmann::json j = t;
  CHECK(j.dump() == R"({"entries":[[1,3],[2,4],[1,2],[3,4],[1,4],[2,3]],"n":4})");
  CHECK(j.get<ReflExpr>() == t);
  CHECK(parse_perm("1,3,2", 3) == Permutation::transposition(3, 2, 3));
  CHECK(parse_perm("(1 3)", 3) == Permutation::transposition(3, 1, 3));
  CHECK(parse_perm("1", 4).is_identity());
  CHECK_THROWS(parse_perm("1,2", 3));
}
