#include <doctest.h>

#include <algorithm>
#include <random>

#include "hdrelay/mwbm.hpp"
#include "hdrelay/oracle.hpp"

using namespace hdrelay;

namespace {

template <class T>
MaskedWeightMatrix<T> from_rows(const std::vector<std::vector<T>>& rows) {
  MaskedWeightMatrix<T> m(std::vector<int>(rows.size(), 0),
                          std::vector<int>(rows.front().size(), 0));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows.front().size(); ++c) m.set(r, c, rows[r][c]);
  return m;
}

template <class T>
MaskedWeightMatrix<T> random_matrix(std::mt19937_64& eng, int max_dim, bool with_absent,
                                    int denom) {
  const int nr = 1 + static_cast<int>(eng() % max_dim);
  const int nc = 1 + static_cast<int>(eng() % max_dim);
  MaskedWeightMatrix<T> m(std::vector<int>(nr, 0), std::vector<int>(nc, 0));
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      if (with_absent && eng() % 4 == 0) continue;
      const long num = static_cast<long>(eng() % 40);
      if constexpr (scalar_traits<T>::exact)
        m.set(r, c, Rational(num, denom));
      else
        m.set(r, c, static_cast<double>(num) / denom);
    }
  return m;
}

// All matchings of a small matrix by direct recursion, for tie-break checks.
template <class T>
void enumerate_matchings(const MaskedWeightMatrix<T>& m, int row, std::vector<char>& used,
                         std::vector<std::pair<int, int>>& cur, T acc,
                         std::vector<std::pair<T, std::vector<std::pair<int, int>>>>& out) {
  if (row == static_cast<int>(m.n_rows())) {
    out.emplace_back(acc, cur);
    return;
  }
  enumerate_matchings(m, row + 1, used, cur, acc, out);  // leave row unmatched
  for (int c = 0; c < static_cast<int>(m.n_cols()); ++c) {
    if (used[c] || !m.present(row, c)) continue;
    used[c] = 1;
    cur.emplace_back(row + 1, c + 1);
    enumerate_matchings(m, row + 1, used, cur, T(acc + m.weight(row, c)), out);
    cur.pop_back();
    used[c] = 0;
  }
}

}  // namespace

TEST_CASE("single-row matrix picks the maximum entry") {
  const auto m = from_rows<Rational>({{Rational(3), Rational(1), Rational(2)}});
  const auto match = max_weight_matching(m);
  CHECK(match.value == Rational(3));
  REQUIRE(match.pairs.size() == 1);
  CHECK(match.pairs[0] == std::pair<int, int>(1, 1));
}

TEST_CASE("2x2 anti-diagonal optimum") {
  const auto m = from_rows<Rational>({{Rational(1), Rational(3)}, {Rational(2), Rational(1)}});
  const auto match = max_weight_matching(m);
  CHECK(match.value == Rational(5));
  REQUIRE(match.pairs.size() == 2);
  CHECK(match.pairs[0] == std::pair<int, int>(1, 2));
  CHECK(match.pairs[1] == std::pair<int, int>(2, 1));
}

TEST_CASE("2x3 equals the maximum of the six pairwise sums") {
  std::mt19937_64 eng(4242);
  for (int rep = 0; rep < 100; ++rep) {
    double b[2][3];
    for (auto& row : b)
      for (auto& x : row) x = static_cast<double>(eng() % 100) / 10.0;
    const auto m = from_rows<double>({{b[0][0], b[0][1], b[0][2]}, {b[1][0], b[1][1], b[1][2]}});
    const double expect =
        std::max({b[0][0] + b[1][1], b[0][0] + b[1][2], b[0][1] + b[1][0], b[0][1] + b[1][2],
                  b[0][2] + b[1][0], b[0][2] + b[1][1]});
    CHECK(matching_value(m) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("empty and fully absent matrices") {
  MaskedWeightMatrix<Rational> empty;
  CHECK(matching_value(empty) == Rational(0));
  CHECK(max_weight_matching(empty).pairs.empty());

  MaskedWeightMatrix<Rational> absent(std::vector<int>(3, 0), std::vector<int>(2, 0));
  CHECK(matching_value(absent) == Rational(0));
  CHECK(max_weight_matching(absent).pairs.empty());
}

TEST_CASE("hungarian equals brute force, exact rationals") {
  std::mt19937_64 eng(777);
  for (int rep = 0; rep < 400; ++rep) {
    const auto m = random_matrix<Rational>(eng, 7, true, 10);
    CHECK(matching_value(m) == oracle::brute_force_mwbm(m));
  }
}

TEST_CASE("hungarian equals brute force, doubles") {
  std::mt19937_64 eng(778);
  for (int rep = 0; rep < 400; ++rep) {
    const auto m = random_matrix<double>(eng, 7, true, 10);
    CHECK(matching_value(m) == doctest::Approx(oracle::brute_force_mwbm(m)).epsilon(1e-12));
  }
}

TEST_CASE("int64 fast path equals the generic rational path") {
  std::mt19937_64 eng(779);
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = random_matrix<Rational>(eng, 6, true, 7);
    CHECK(matching_value(m) == detail::padded_max_value(m));
  }
}

TEST_CASE("monotonicity in any single weight") {
  std::mt19937_64 eng(780);
  for (int rep = 0; rep < 100; ++rep) {
    auto m = random_matrix<Rational>(eng, 5, true, 10);
    const Rational before = matching_value(m);
    // bump the first present entry
    for (size_t r = 0; r < m.n_rows(); ++r)
      for (size_t c = 0; c < m.n_cols(); ++c)
        if (m.present(r, c)) {
          m.set(r, c, m.weight(r, c) + Rational(1, 3));
          goto bumped;
        }
  bumped:
    CHECK(matching_value(m) >= before);
  }
}

TEST_CASE("permutation invariance and scaling") {
  std::mt19937_64 eng(781);
  for (int rep = 0; rep < 60; ++rep) {
    const auto m = random_matrix<Rational>(eng, 5, true, 10);
    const Rational v = matching_value(m);

    std::vector<int> pr(m.n_rows()), pc(m.n_cols());
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), eng);
    std::shuffle(pc.begin(), pc.end(), eng);
    MaskedWeightMatrix<Rational> shuffled(std::vector<int>(m.n_rows(), 0),
                                          std::vector<int>(m.n_cols(), 0));
    MaskedWeightMatrix<Rational> scaled(std::vector<int>(m.n_rows(), 0),
                                        std::vector<int>(m.n_cols(), 0));
    for (size_t r = 0; r < m.n_rows(); ++r)
      for (size_t c = 0; c < m.n_cols(); ++c)
        if (m.present(r, c)) {
          shuffled.set(pr[r], pc[c], m.weight(r, c));
          scaled.set(r, c, m.weight(r, c) * Rational(7, 2));
        }
    CHECK(matching_value(shuffled) == v);
    CHECK(matching_value(scaled) == v * Rational(7, 2));
  }
}

TEST_CASE("canonical pair list is the lexicographically smallest optimum") {
  std::mt19937_64 eng(782);
  for (int rep = 0; rep < 150; ++rep) {
    // small weights force plenty of ties
    const int nr = 1 + static_cast<int>(eng() % 4);
    const int nc = 1 + static_cast<int>(eng() % 4);
    MaskedWeightMatrix<Rational> m(std::vector<int>(nr, 0), std::vector<int>(nc, 0));
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        if (eng() % 5 != 0) m.set(r, c, Rational(static_cast<long>(eng() % 3)));

    std::vector<std::pair<Rational, std::vector<std::pair<int, int>>>> all;
    std::vector<char> used(nc, 0);
    std::vector<std::pair<int, int>> cur;
    enumerate_matchings(m, 0, used, cur, Rational(0), all);
    Rational best(0);
    for (const auto& [v, p] : all) best = std::max(best, v);
    std::vector<std::pair<int, int>> lex_min;
    bool have = false;
    for (const auto& [v, p] : all)
      if (v == best && (!have || p < lex_min)) {
        lex_min = p;
        have = true;
      }

    const auto match = max_weight_matching(m);
    CHECK(match.value == best);
    CHECK(match.pairs == lex_min);
    // pairs reference present entries and are disjoint
    std::vector<char> row_seen(nr, 0), col_seen(nc, 0);
    Rational sum(0);
    for (const auto& [r, c] : match.pairs) {
      CHECK(m.present(r - 1, c - 1));
      CHECK_FALSE(row_seen[r - 1]);
      CHECK_FALSE(col_seen[c - 1]);
      row_seen[r - 1] = col_seen[c - 1] = 1;
      sum += m.weight(r - 1, c - 1);
    }
    CHECK(sum == match.value);
  }
}
