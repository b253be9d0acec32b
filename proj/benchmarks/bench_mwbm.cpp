#include <benchmark/benchmark.h>

#include <random>

#include "hdrelay/mwbm.hpp"
#include "hdrelay/oracle.hpp"

using namespace hdrelay;

namespace {

template <class T>
MaskedWeightMatrix<T> random_matrix(std::mt19937_64& eng, int n, int denom) {
  MaskedWeightMatrix<T> m(std::vector<int>(n, 0), std::vector<int>(n, 0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (eng() % 4 == 0) continue;
      const long num = static_cast<long>(eng() % 40);
      if constexpr (scalar_traits<T>::exact)
        m.set(r, c, Rational(num, denom));
      else
        m.set(r, c, static_cast<double>(num) / denom);
    }
  return m;
}

void BM_MatchingValueRational(benchmark::State& state) {
  std::mt19937_64 eng(1);
  const auto m = random_matrix<Rational>(eng, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(matching_value(m));
}

void BM_MatchingValueDouble(benchmark::State& state) {
  std::mt19937_64 eng(2);
  const auto m = random_matrix<double>(eng, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(matching_value(m));
}

void BM_MatchingValueRationalGeneric(benchmark::State& state) {
  std::mt19937_64 eng(1);
  const auto m = random_matrix<Rational>(eng, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(detail::padded_max_value(m));
}

void BM_BruteForce(benchmark::State& state) {
  std::mt19937_64 eng(3);
  const auto m = random_matrix<Rational>(eng, static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::brute_force_mwbm(m));
}

}  // namespace

BENCHMARK(BM_MatchingValueRational)->DenseRange(3, 9, 3);
BENCHMARK(BM_MatchingValueDouble)->DenseRange(3, 9, 3);
BENCHMARK(BM_MatchingValueRationalGeneric)->DenseRange(3, 9, 3);
BENCHMARK(BM_BruteForce)->DenseRange(3, 7, 2);

BENCHMARK_MAIN();
