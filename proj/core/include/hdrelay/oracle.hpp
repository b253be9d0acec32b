#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hdrelay/channel.hpp"
#include "hdrelay/gdof.hpp"
#include "hdrelay/network.hpp"

namespace hdrelay::oracle {

// Exhaustive maximum over all column subsets and assignments, including
// partial matchings, organized as a subset DP over the smaller dimension.
// Independent of the Hungarian solver; the reference for its values.
template <class T>
T brute_force_mwbm(const MaskedWeightMatrix<T>& m) {
  const int nr = static_cast<int>(m.n_rows());
  const int nc = static_cast<int>(m.n_cols());
  if (nr == 0 || nc == 0) return T(0);
  if (std::min(nr, nc) > 8)
    throw std::invalid_argument("brute_force_mwbm: enumeration limit is min dimension 8");
  const bool transpose = nc > nr;
  const int rows = transpose ? nc : nr;
  const int cols = transpose ? nr : nc;
  auto weight_at = [&](int r, int c) { return transpose ? m.weight(c, r) : m.weight(r, c); };
  auto present_at = [&](int r, int c) { return transpose ? m.present(c, r) : m.present(r, c); };

  const std::uint32_t full = (1u << cols);
  std::vector<T> dp(full, T(0)), next(full, T(0));
  for (int r = 0; r < rows; ++r) {
    next = dp;  // row r left unmatched
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      for (int c = 0; c < cols; ++c) {
        if (mask & (1u << c)) continue;
        if (!present_at(r, c)) continue;
        const T cand = dp[mask] + weight_at(r, c);
        T& slot = next[mask | (1u << c)];
        if (cand > slot) slot = cand;
      }
    }
    dp.swap(next);
  }
  T best(0);
  for (std::uint32_t mask = 0; mask < full; ++mask)
    if (dp[mask] > best) best = dp[mask];
  return best;
}

// log2 det(I + H_{A,s} H_{A,s}^H) on realized gains, same masking as
// masked_submatrix.
double logdet_cut_value(const ChannelInstance& h, const CutSet& cut, const StateVector& state);

// Convention for "the error decreases along the SNR ladder": strict decrease
// is required only above the numerical noise floor; once the error has
// converged below the floor it may fluctuate within it.
inline bool errors_decreasing(const std::vector<double>& errs, double floor = 5e-3) {
  for (size_t k = 1; k < errs.size(); ++k)
    if (errs[k] > std::max(errs[k - 1], floor)) return false;
  return true;
}

struct GdofNumericResult {
  std::vector<double> snrs;
  std::vector<double> estimates;  // LP optimum of the finite-SNR coefficients
  double final_estimate = 0.0;
};

// End-to-end numeric gDoF estimate: for each SNR, the LP of the cut-set
// program is solved with coefficients log2det/log2(1+SNR), taking the median
// over random phase draws.
GdofNumericResult gdof_numeric(const ExponentMatrix<double>& b, const std::vector<double>& snrs,
                               int phase_trials, std::uint64_t seed);

// Dense grid search over the 3-simplex for N=2 networks; lower-bounds the LP
// optimum within (max coefficient) * grid_step * 4.
double grid_search_gdof_n2(const ExponentMatrix<double>& b, double grid_step);

}  // namespace hdrelay::oracle
