#include <doctest.h>

#include <random>

#include "hdrelay/channel.hpp"
#include "hdrelay/network.hpp"

using namespace hdrelay;

namespace {
ExponentMatrix<Rational> one_relay(Rational bs1, Rational b1d, Rational bsd) {
  // rows: relay1, dest; cols: relay1, source
  return ExponentMatrix<Rational>(1, {Rational(0), bs1, b1d, bsd});
}
}  // namespace

TEST_CASE("state index convention") {
  CHECK(state_from_index(7, 3).bits() == std::vector<int>{1, 1, 0});
  CHECK(state_from_index(1, 3).bits() == std::vector<int>{0, 0, 0});
  CHECK(state_from_index(8, 3).bits() == std::vector<int>{1, 1, 1});
  CHECK(state_from_index(7, 3).transmits(1));
  CHECK(state_from_index(7, 3).listens(3));
  CHECK_THROWS_AS(state_from_index(0, 3), std::out_of_range);
  CHECK_THROWS_AS(state_from_index(9, 3), std::out_of_range);
}

TEST_CASE("cut index convention") {
  CHECK(cut_from_index(7, 3).members() == std::vector<int>{1, 2});
  CHECK(cut_from_index(7, 3).complement() == std::vector<int>{3});
  CHECK(cut_from_index(1, 3).members().empty());
  CHECK(cut_from_index(8, 3).members() == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(cut_from_index(0, 2), std::out_of_range);
  CHECK_THROWS_AS(cut_from_index(5, 2), std::out_of_range);
}

TEST_CASE("index round trips") {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t idx = 1; idx <= (std::uint64_t{1} << n); ++idx) {
      CHECK(index_from_state(state_from_index(idx, n)) == idx);
      CHECK(index_from_cut(cut_from_index(idx, n)) == idx);
    }
  }
}

TEST_CASE("exponent matrix validation") {
  CHECK_THROWS_AS(ExponentMatrix<double>(1, {0.0, 1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentMatrix<double>(1, {0.0, -1.0, 2.0, 1.0}), std::invalid_argument);
  // relay self-entries are ignored, negative there is tolerated
  CHECK_NOTHROW(ExponentMatrix<double>(1, {-5.0, 1.0, 2.0, 1.0}));
  const auto b = one_relay(Rational(3), Rational(2), Rational(1));
  CHECK(b.beta(1, 2) == Rational(3));
  CHECK(b.beta(2, 1) == Rational(2));
  CHECK(b.direct() == Rational(1));
}

TEST_CASE("masked submatrix: one-relay goldens") {
  const auto b = one_relay(Rational(3), Rational(2), Rational(1));

  SUBCASE("empty cut, relay listening") {
    const auto m = masked_submatrix(b, cut_from_index(1, 1), state_from_index(1, 1));
    REQUIRE(m.n_rows() == 2);
    REQUIRE(m.n_cols() == 1);
    // node N+1 first, then relays: rows [dest, relay1], column [source]
    CHECK(m.row_labels() == std::vector<int>{2, 1});
    CHECK(m.col_labels() == std::vector<int>{2});
    CHECK(m.present(0, 0));
    CHECK(m.weight(0, 0) == Rational(1));
    CHECK(m.present(1, 0));
    CHECK(m.weight(1, 0) == Rational(3));
  }
  SUBCASE("full cut, relay listening: transmit column masked") {
    const auto m = masked_submatrix(b, cut_from_index(2, 1), state_from_index(1, 1));
    REQUIRE(m.n_rows() == 1);
    REQUIRE(m.n_cols() == 2);
    CHECK(m.col_labels() == std::vector<int>{2, 1});
    CHECK(m.present(0, 0));
    CHECK(m.weight(0, 0) == Rational(1));
    CHECK_FALSE(m.present(0, 1));
  }
  SUBCASE("full cut, relay transmitting") {
    const auto m = masked_submatrix(b, cut_from_index(2, 1), state_from_index(2, 1));
    REQUIRE(m.n_rows() == 1);
    REQUIRE(m.n_cols() == 2);
    CHECK(m.weight(0, 0) == Rational(1));
    CHECK(m.present(0, 1));
    CHECK(m.weight(0, 1) == Rational(2));
  }
}

TEST_CASE("mask structure over random networks") {
  std::mt19937_64 eng(12345);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(eng() % 4);
    const int side = n + 1;
    std::vector<double> beta(side * side);
    for (auto& x : beta) x = static_cast<double>(eng() % 7);
    ExponentMatrix<double> b(n, beta);
    const std::uint64_t m = std::uint64_t{1} << n;
    const auto cut = cut_from_index(1 + eng() % m, n);
    const auto state = state_from_index(1 + eng() % m, n);
    const auto sub = masked_submatrix(b, cut, state);

    // destination row and source column survive every mask
    CHECK(sub.present(0, 0));
    for (size_t c = 0; c < sub.n_cols(); ++c) {
      const int node = sub.col_labels()[c];
      if (node == n + 1) continue;
      CHECK(sub.col_fully_absent(c) == state.listens(node));
    }
    for (size_t r = 0; r < sub.n_rows(); ++r) {
      const int node = sub.row_labels()[r];
      if (node == n + 1) continue;
      CHECK(sub.row_fully_absent(r) == state.transmits(node));
    }
  }
}

TEST_CASE("masked weight matrix rejects negative weights") {
  MaskedWeightMatrix<double> m({0, 0}, {0});
  CHECK_THROWS_AS(m.set(0, 0, -1.0), std::invalid_argument);
}

TEST_CASE("realize_channel magnitudes and determinism") {
  ExponentMatrix<double> b(1, {0.0, 2.0, 0.0, 1.0});
  const auto h = realize_channel(b, 100.0, 7);
  CHECK(std::abs(std::norm(h.gains(0, 1)) - 1e4) < 1e-6);  // beta = 2, snr = 100
  CHECK(std::abs(std::norm(h.gains(1, 0)) - 1.0) < 1e-12);  // beta = 0 is unit gain
  CHECK(h.gains(0, 0) == std::complex<double>(0.0, 0.0));   // relay self-entry
  const auto h2 = realize_channel(b, 100.0, 7);
  CHECK(h.gains == h2.gains);
  const auto h3 = realize_channel(b, 100.0, 8);
  CHECK(h.gains != h3.gains);
  CHECK_THROWS_AS(realize_channel(b, 1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(realize_channel(b, 0.5, 7), std::invalid_argument);
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("5/3") == Rational(5, 3));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(rational_to_string(Rational(5, 3)) == "5/3");
  CHECK(rational_to_string(Rational(4)) == "4");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  // exact double round trip
  std::mt19937_64 eng(99);
  for (int i = 0; i < 100; ++i) {
    const double x = static_cast<double>(eng()) / 1e12 - 9e6;
    CHECK(to_double(rational_from_double(x)) == x);
  }
}
