#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bsm/dseq.hpp"

using namespace bsm;

namespace {

std::vector<int> iota1(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

// product of the chosen entries by plain swaps
bool is_identity_product(const ReflExpr& t, Mask b) {
  std::vector<int> a = iota1(t.n);
  for (int i = 1; i <= t.size(); ++i)
    if (b & bit(i)) std::swap(a[t[i].i - 1], a[t[i].j - 1]);
  return a == iota1(t.n);
}

}  // namespace

TEST_CASE("solutions for n = 3") {
  SolutionTable tab = e_table(3, 0, {1, 2, 3});
  std::set<std::string> rows;
  for (auto& r : tab.rows) rows.insert(r.e.str());
  CHECK(rows == std::set<std::string>{"00000", "10100", "11110", "11011", "01001"});
  for (auto& r : tab.rows) CHECK(is_identity_product(*tab.t, r.e.bits()));
  CHECK(tab.rows[0].e.bits() == 0);
  CHECK(verify_solutions(tab));
}

TEST_CASE("solutions match brute force") {
  std::mt19937_64 rng(1);
  for (int n = 3; n <= 6; ++n)
    for (int k = 1 - n; k <= n - 1; ++k) {
      auto i = random_arrangement(n, rng);
      SolutionTable tab = e_table(n, k, i);
      std::vector<Mask> rows, brute;
      for (auto& r : tab.rows) rows.push_back(r.e.bits());
      for (Mask b = 0; b < (1u << tab.len()); ++b)
        if (is_identity_product(*tab.t, b)) brute.push_back(b);
      std::sort(rows.begin(), rows.end());
      CHECK(static_cast<int>(rows.size()) == 2 * n - 1);
      CHECK(rows == brute);
    }
}

TEST_CASE("shifted solutions stay solutions") {
  std::mt19937_64 rng(2);
  for (int c = 0; c < 200; ++c) {
    int n = 3 + static_cast<int>(rng() % 4);
    SolutionTable tab = e_table(n, 0, random_arrangement(n, rng));
    int k = static_cast<int>(rng() % 40) - 20;
    Mask b = tab.rows[rng() % tab.rows.size()].e.bits();
    CHECK(is_identity_product(shift(*tab.t, k), shift_bits(b, tab.len(), k)));
  }
  CHECK(shift_bits(parse_bits("10100"), 5, 1) == parse_bits("01001"));
}

TEST_CASE("reverse of a shifted D-sequence") {
  // checked entrywise for every arrangement class; the shift is n-1-k
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 7; ++n)
    for (int k = 1 - n; k <= n - 1; ++k)
      for (int r = 0; r < 3; ++r) {
        auto i = r == 0 ? iota1(n) : random_arrangement(n, rng);
        ReflExpr lhs = reverse(shift(make_D(n, i), k));
        ReflExpr di = make_D(n, seq::ddot(i));
        CHECK(lhs == shift(di, n - 1 - k));
        CHECK(lhs != shift(di, n - k));
      }
  CHECK(reverse(make_D(3, {1, 2, 3})) == shift(make_D(3, {1, 3, 2}), 2));
  CHECK(reverse(make_D(3, {1, 2, 3})) != shift(make_D(3, {1, 3, 2}), 3));
}

TEST_CASE("folding a D-sequence") {
  ReflExpr f = fold_expr(make_D(3, {1, 2, 3}), {1, 3});
  CHECK(f == shift(make_D(3, seq::shift(std::vector<int>{1, 2, 3}, 1)), -1));
}

TEST_CASE("rows e^(l)") {
  for (int n = 3; n <= 7; ++n) {
    CHECK(e_row(n, 0) == 0);
    CHECK(e_row(n, 2 * n - 1) == e_row(n, 0));
    std::set<Mask> rows;
    for (int l = 0; l < 2 * n - 1; ++l) rows.insert(e_row(n, l));
    CHECK(static_cast<int>(rows.size()) == 2 * n - 1);
  }
}

TEST_CASE("chords") {
  Chord A(4, 3);
  CHECK(A.pos_list() == std::vector<int>{3, 6});
  CHECK(A.plus(7) == A);
  CHECK(chord_of(4, mask_of({3, 7})));
  CHECK_FALSE(chord_of(4, mask_of({1, 2})));
  // M_{(1 4)} of the zero row of D(1,2,3,4) is {3,7}
  SolutionTable tab = e_table(4, 0, {1, 2, 3, 4});
  CHECK(positions(tab.rows[0].e.M(Reflection(4, 1, 4))) == std::vector<int>{3, 7});
  chord_label(tab);
  REQUIRE(tab.labeled);
  // both labelings are bijections onto the rows
  std::set<int> ab(tab.a_bullet.begin(), tab.a_bullet.end()), ba(tab.bullet_a.begin(), tab.bullet_a.end());
  CHECK(static_cast<int>(ab.size()) == 7);
  CHECK(static_cast<int>(ba.size()) == 7);
  CHECK(tab.a_bullet != tab.bullet_a);
  for (auto& C : tab.chords()) {
    std::vector<Polynomial> roots;
    for (int j = 1; j <= 3; ++j) roots.push_back(tab.alphaA[C.plus(j).a]);
    CHECK(linear_rank(roots) == 3);
  }
}

TEST_CASE("structure checks") {
  std::mt19937_64 rng(4);
  for (int n = 3; n <= 6; ++n)
    for (int k = 1 - n; k <= n - 1; ++k) {
      SolutionTable tab = e_table(n, k, random_arrangement(n, rng));
      chord_label(tab);
      for (auto& c : structure_checks(tab)) {
        INFO(c.name, " ", c.detail);
        CHECK(c.ok);
      }
    }
}

TEST_CASE("n = 3 and n = 4 verdicts") {
  DseqReport r3 = dseq_report(3, 1, {2, 1, 3});
  CHECK(r3.verdict);
  CHECK(r3.outcome == "completed");
  CHECK(r3.P->str() == "1+3v^-2+v^-4");
  DseqReport r4 = dseq_report(4, 0, {1, 2, 3, 4});
  CHECK(r4.verdict);
  CHECK(r4.last_step == 5);
  CHECK(r4.surviving == 7);
  CHECK(r4.roots.size() == 3);
  REQUIRE(r4.st);
  CHECK(r4.st->pd_st == 1);
  nlohmann::json j = r4;
  CHECK(j["verdict"] == true);
}

TEST_CASE("DOT export of the cycle") {
  SolutionTable tab = e_table(4, 0, {1, 2, 3, 4});
  chord_label(tab);
  std::string dot = table_dot(tab);
  std::size_t edges = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++edges;
  CHECK(edges == 7);
}
