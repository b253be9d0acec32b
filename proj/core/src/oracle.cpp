#include "hdrelay/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace hdrelay::oracle {

double logdet_cut_value(const ChannelInstance& h, const CutSet& cut, const StateVector& state) {
  return logdet2_identity_plus_gram(masked_gain_submatrix(h, cut, state));
}

GdofNumericResult gdof_numeric(const ExponentMatrix<double>& b, const std::vector<double>& snrs,
                               int phase_trials, std::uint64_t seed) {
  if (b.n_relays() > 4)
    throw std::invalid_argument("gdof_numeric: limited to N <= 4");
  if (phase_trials < 1) throw std::invalid_argument("gdof_numeric: need at least one phase trial");
  const int n = b.n_relays();
  const std::uint64_t m = std::uint64_t{1} << n;
  GdofNumericResult out;
  std::vector<double> samples(phase_trials);
  for (double snr : snrs) {
    const double norm = std::log2(1.0 + snr);
    std::vector<ChannelInstance> draws;
    draws.reserve(phase_trials);
    for (int t = 0; t < phase_trials; ++t)
      draws.push_back(realize_channel(b, snr, mix_seed(seed, t)));
    CoefficientMatrix<double> coeff{n, std::vector<double>(m * m, 0.0)};
    for (std::uint64_t i = 1; i <= m; ++i) {
      const CutSet cut = cut_from_index(i, n);
      for (std::uint64_t j = 1; j <= m; ++j) {
        const StateVector state = state_from_index(j, n);
        for (int t = 0; t < phase_trials; ++t)
          samples[t] = logdet_cut_value(draws[t], cut, state) / norm;
        std::sort(samples.begin(), samples.end());
        const int h = phase_trials / 2;
        coeff.at(i, j) = (phase_trials % 2 == 1) ? samples[h]
                                                 : 0.5 * (samples[h - 1] + samples[h]);
      }
    }
    out.snrs.push_back(snr);
    out.estimates.push_back(solve_gdof(coeff).d);
  }
  out.final_estimate = out.estimates.empty() ? 0.0 : out.estimates.back();
  return out;
}

double grid_search_gdof_n2(const ExponentMatrix<double>& b, double grid_step) {
  if (b.n_relays() != 2) throw std::invalid_argument("grid_search_gdof_n2: N must be 2");
  if (!(grid_step > 0.0) || grid_step > 0.5)
    throw std::invalid_argument("grid_search_gdof_n2: bad grid step");
  const auto a = build_coefficient_matrix(b);
  const long k = std::lround(1.0 / grid_step);
  // Integer composition loop; cut values accumulated incrementally so the
  // innermost work is a handful of adds.
  double best = -1.0;
  for (long k1 = 0; k1 <= k; ++k1) {
    const double p1[4] = {k1 * a.at(1, 1), k1 * a.at(2, 1), k1 * a.at(3, 1), k1 * a.at(4, 1)};
    for (long k2 = 0; k2 <= k - k1; ++k2) {
      const double p2[4] = {p1[0] + k2 * a.at(1, 2), p1[1] + k2 * a.at(2, 2),
                            p1[2] + k2 * a.at(3, 2), p1[3] + k2 * a.at(4, 2)};
      for (long k3 = 0; k3 <= k - k1 - k2; ++k3) {
        const long k4 = k - k1 - k2 - k3;
        const double v1 = p2[0] + k3 * a.at(1, 3) + k4 * a.at(1, 4);
        const double v2 = p2[1] + k3 * a.at(2, 3) + k4 * a.at(2, 4);
        const double v3 = p2[2] + k3 * a.at(3, 3) + k4 * a.at(3, 4);
        const double v4 = p2[3] + k3 * a.at(4, 3) + k4 * a.at(4, 4);
        const double v = std::min(std::min(v1, v2), std::min(v3, v4));
        if (v > best) best = v;
      }
    }
  }
  return best / static_cast<double>(k);
}

}  // namespace hdrelay::oracle
