#include <doctest.h>

#include <cmath>
#include <random>

#include "hdrelay/bounds.hpp"
#include "hdrelay/closedform2.hpp"
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

// Plain recursion over row assignments; validates the subset DP oracle on
// tiny instances.
template <class T>
T naive_best(const MaskedWeightMatrix<T>& m, int row, std::vector<char>& used) {
  if (row == static_cast<int>(m.n_rows())) return T(0);
  T best = naive_best(m, row + 1, used);
  for (int c = 0; c < static_cast<int>(m.n_cols()); ++c) {
    if (used[c] || !m.present(row, c)) continue;
    used[c] = 1;
    const T cand = m.weight(row, c) + naive_best(m, row + 1, used);
    used[c] = 0;
    if (cand > best) best = cand;
  }
  return best;
}

ExponentMatrix<double> fig3_network() {
  const TwoRelayParams<double> p{2.0, 1.5, 1.5, 2.0, 0.0, 0.0};
  return two_relay_network(p);
}

}  // namespace

TEST_CASE("brute force examples") {
  CHECK(oracle::brute_force_mwbm(
            from_rows<Rational>({{Rational(1), Rational(3)}, {Rational(2), Rational(1)}})) ==
        Rational(5));
  CHECK(oracle::brute_force_mwbm(from_rows<Rational>({{Rational(7, 3)}})) == Rational(7, 3));
  MaskedWeightMatrix<Rational> big(std::vector<int>(9, 0), std::vector<int>(9, 0));
  CHECK_THROWS_AS(oracle::brute_force_mwbm(big), std::invalid_argument);
}

TEST_CASE("subset DP equals plain recursion on small matrices") {
  std::mt19937_64 eng(141);
  for (int rep = 0; rep < 300; ++rep) {
    const int nr = 1 + static_cast<int>(eng() % 3);
    const int nc = 1 + static_cast<int>(eng() % 3);
    MaskedWeightMatrix<Rational> m(std::vector<int>(nr, 0), std::vector<int>(nc, 0));
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        if (eng() % 4 != 0) m.set(r, c, Rational(static_cast<long>(eng() % 20), 5));
    std::vector<char> used(nc, 0);
    CHECK(oracle::brute_force_mwbm(m) == naive_best(m, 0, used));
  }
}

TEST_CASE("log-det cut value basics") {
  ExponentMatrix<double> b(1, {0.0, 3.0, 2.0, 1.0});
  const auto h = realize_channel(b, 1e6, 5);

  SUBCASE("zero gains give zero bits") {
    ChannelInstance z = h;
    z.gains.setZero();
    CHECK(oracle::logdet_cut_value(z, cut_from_index(1, 1), state_from_index(1, 1)) == 0.0);
  }
  SUBCASE("scalar cut reduces to log2(1 + SNR^beta)") {
    // empty cut, relay transmitting: only the destination row with the
    // direct link survives
    const double v = oracle::logdet_cut_value(h, cut_from_index(1, 1), state_from_index(2, 1));
    CHECK(v == doctest::Approx(std::log2(1.0 + 1e6)).epsilon(1e-9));
  }
}

TEST_CASE("high-SNR ratio converges to the matching value") {
  std::mt19937_64 eng(142);
  int joint_ok = 0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + static_cast<int>(eng() % 3);
    const int side = n + 1;
    std::vector<double> beta(static_cast<size_t>(side) * side, 0.0);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        if (i == j && i < n) continue;
        beta[static_cast<size_t>(i) * side + j] =
            3.0 * static_cast<double>(eng() >> 11) * 0x1.0p-53;
      }
    ExponentMatrix<double> b(n, beta);
    const std::uint64_t m = std::uint64_t{1} << n;
    const auto cut = cut_from_index(1 + eng() % m, n);
    const auto state = state_from_index(1 + eng() % m, n);
    const double target = matching_value(masked_submatrix(b, cut, state));
    std::vector<double> errs;
    for (double snr : {1e4, 1e6, 1e8, 1e10, 1e12}) {
      const auto h = realize_channel(b, snr, mix_seed(7, t));
      errs.push_back(
          std::fabs(oracle::logdet_cut_value(h, cut, state) / std::log2(1.0 + snr) - target));
    }
    if (oracle::errors_decreasing(errs) && errs.back() < 0.05) ++joint_ok;
  }
  CHECK(joint_ok >= trials * 95 / 100);
}

TEST_CASE("numeric gDoF estimates") {
  SUBCASE("one relay converges to 5/3") {
    ExponentMatrix<double> b(1, {0.0, 3.0, 2.0, 1.0});
    const auto r = oracle::gdof_numeric(b, {1e12}, 11, 21);
    CHECK(std::fabs(r.final_estimate - 5.0 / 3.0) < 0.05);
  }
  SUBCASE("useless relays converge to the direct exponent") {
    ExponentMatrix<double> b(2, {0, 0, 0, 0, 0, 0, 0, 0, 1.0});
    const auto r = oracle::gdof_numeric(b, {1e12}, 11, 22);
    CHECK(std::fabs(r.final_estimate - 1.0) < 0.01);
  }
  SUBCASE("example two-relay network converges to 1.8") {
    const auto r = oracle::gdof_numeric(fig3_network(), {1e12}, 11, 23);
    CHECK(std::fabs(r.final_estimate - 1.8) < 0.05);
  }
  SUBCASE("estimates improve along the SNR ladder") {
    ExponentMatrix<double> b(1, {0.0, 3.0, 2.0, 1.0});
    const auto r = oracle::gdof_numeric(b, {1e4, 1e8, 1e12}, 11, 24);
    REQUIRE(r.estimates.size() == 3);
    CHECK(std::fabs(r.estimates.back() - 5.0 / 3.0) <
          std::fabs(r.estimates.front() - 5.0 / 3.0));
  }
  SUBCASE("size and argument guards") {
    ExponentMatrix<double> b5(5, std::vector<double>(36, 0.0));
    CHECK_THROWS_AS(oracle::gdof_numeric(b5, {1e4}, 3, 1), std::invalid_argument);
    ExponentMatrix<double> b1(1, {0.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(oracle::gdof_numeric(b1, {1e4}, 0, 1), std::invalid_argument);
  }
}

TEST_CASE("grid search on the simplex") {
  SUBCASE("example network") {
    CHECK(std::fabs(oracle::grid_search_gdof_n2(fig3_network(), 1e-3) - 1.8) <= 0.01);
  }
  SUBCASE("degenerate network is exact on any grid") {
    ExponentMatrix<double> b(2, {0, 0, 0, 0, 0, 0, 0, 0, 1.5});
    CHECK(oracle::grid_search_gdof_n2(b, 0.05) == 1.5);
  }
  SUBCASE("lower bound within the Lipschitz error against the LP") {
    std::mt19937_64 eng(143);
    for (int rep = 0; rep < 60; ++rep) {
      const int side = 3;
      std::vector<double> beta(9, 0.0);
      for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
          if (i == j && i < 2) continue;
          beta[static_cast<size_t>(i) * side + j] =
              3.0 * static_cast<double>(eng() >> 11) * 0x1.0p-53;
        }
      ExponentMatrix<double> b(2, beta);
      const auto a = build_coefficient_matrix(b);
      double max_coeff = 0.0;
      for (double v : a.a) max_coeff = std::max(max_coeff, v);
      const double step = 0.01;
      const double grid = oracle::grid_search_gdof_n2(b, step);
      const double lp = solve_gdof(a).d;
      CHECK(grid <= lp + 1e-9);
      CHECK(lp - grid <= max_coeff * step * 4 + 1e-9);
    }
  }
  SUBCASE("argument guards") {
    ExponentMatrix<double> b1(1, {0.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(oracle::grid_search_gdof_n2(b1, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(oracle::grid_search_gdof_n2(fig3_network(), 0.0), std::invalid_argument);
  }
}
