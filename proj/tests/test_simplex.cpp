#include <doctest.h>

#include "hdrelay/simplex.hpp"

using namespace hdrelay;

TEST_CASE("small LP, doubles") {
  // max x + y st x <= 2, y <= 3, x + y <= 4
  std::vector<std::vector<double>> a{{1, 0}, {0, 1}, {1, 1}};
  const auto s = simplex_max<double>(a, {2, 3, 4}, {1, 1});
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(4.0));
  CHECK(s.x[0] + s.x[1] == doctest::Approx(4.0));
  // duals: y >= 0, complementary with the binding constraints
  for (double y : s.dual) CHECK(y >= -1e-12);
  CHECK(s.dual[0] * (2 - s.x[0]) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("exact rational LP with degenerate rows") {
  // max d st d - x <= 0, d - x <= 0 (duplicate), x <= 1
  std::vector<std::vector<Rational>> a{{Rational(-1), Rational(1)},
                                       {Rational(-1), Rational(1)},
                                       {Rational(1), Rational(0)}};
  const auto s = simplex_max<Rational>(a, {Rational(0), Rational(0), Rational(1)},
                                       {Rational(0), Rational(1)});
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == Rational(1));
  CHECK(s.x[0] == Rational(1));
  CHECK(s.x[1] == Rational(1));
}

TEST_CASE("unbounded detection") {
  // max x st -x <= 0
  std::vector<std::vector<double>> a{{-1}};
  const auto s = simplex_max<double>(a, {0}, {1});
  CHECK(s.status == LpStatus::unbounded);
}

TEST_CASE("b must be nonnegative") {
  std::vector<std::vector<double>> a{{1}};
  CHECK_THROWS_AS(simplex_max<double>(a, {-1}, {1}), std::invalid_argument);
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  // max 3/4 x1 - 150 x2 + 1/50 x3 - 6 x4; classic cycling instance for the
  // most-negative-cost rule. Optimum 1/20.
  std::vector<std::vector<Rational>> a{
      {Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)},
      {Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)},
      {Rational(0), Rational(0), Rational(1), Rational(0)}};
  const auto s = simplex_max<Rational>(
      a, {Rational(0), Rational(0), Rational(1)},
      {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)});
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == Rational(1, 20));
}

TEST_CASE("weak duality holds exactly at the optimum") {
  std::vector<std::vector<Rational>> a{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
  const std::vector<Rational> b{Rational(4), Rational(6)};
  const std::vector<Rational> c{Rational(3), Rational(5)};
  const auto s = simplex_max<Rational>(a, b, c);
  REQUIRE(s.status == LpStatus::optimal);
  Rational dual_obj(0);
  for (size_t i = 0; i < b.size(); ++i) {
    CHECK(s.dual[i] >= Rational(0));
    dual_obj += s.dual[i] * b[i];
  }
  CHECK(dual_obj == s.objective);
  for (size_t j = 0; j < c.size(); ++j) {
    Rational reduced(0);
    for (size_t i = 0; i < b.size(); ++i) reduced += s.dual[i] * a[i][j];
    CHECK(reduced >= c[j]);
  }
}
