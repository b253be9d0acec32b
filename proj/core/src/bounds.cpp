#include "hdrelay/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace hdrelay {

namespace {
constexpr double kE = 2.718281828459045235360287471353;

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("gap formulas require N >= 1");
}
}  // namespace

double gap_hd_network(int n_relays) {
  check_n(n_relays);
  return 2.021 * (n_relays + 2);
}

double gap_hd_network_old(int n_relays) {
  check_n(n_relays);
  const double k = n_relays + 2;
  return 0.5 * k * std::log2(4.0 * k);
}

double gap_hd_diamond(int n_relays) {
  check_n(n_relays);
  const double k = n_relays + 2;
  return 4.0 / k * std::log2(k / 2.0 + k * k * k / 8.0) + k * std::log2(2.0 + 8.0 / (k * k));
}

double gap_hd_diamond_approx(int n_relays) {
  check_n(n_relays);
  return static_cast<double>(n_relays);
}

double gap_fd_multicast(int k_nodes) {
  if (k_nodes < 2) throw std::invalid_argument("gap_fd_multicast requires K >= 2");
  return 2.0 * 0.5105 * k_nodes;
}

GapReport gap_report(int n_relays) {
  return GapReport{n_relays, gap_hd_network(n_relays), gap_hd_network_old(n_relays),
                   gap_hd_diamond(n_relays), gap_fd_multicast(n_relays + 2)};
}

double gap_bracket(double gamma, double mu) {
  if (!(gamma >= kE - 1.0)) throw std::invalid_argument("gap_bracket: gamma must be >= e-1");
  if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("gap_bracket: mu must be in [0,1]");
  const double first = mu * std::log2(2.0 * gamma / (gamma - 1.0));
  const double mn = std::min(mu, 1.0 - mu);
  if (mn <= 0.0) return first;
  const double second = mn * std::min(gamma / kE, mn / mu) *
                        std::log2(std::max(kE, gamma * mu / mn));
  return first + second;
}

GapMinMax gap_constant_minmax(int mu_grid_size, double gamma_lo, double gamma_hi,
                              int gamma_grid_size) {
  if (mu_grid_size < 2 || gamma_grid_size < 2)
    throw std::invalid_argument("gap_constant_minmax: empty grid");
  if (!(gamma_lo >= kE - 1.0) || !(gamma_hi > gamma_lo))
    throw std::invalid_argument("gap_constant_minmax: bad gamma range");
  GapMinMax out;
  bool first_gamma = true;
  for (int gi = 0; gi < gamma_grid_size; ++gi) {
    const double gamma = gamma_lo + (gamma_hi - gamma_lo) * gi / (gamma_grid_size - 1);
    double max_val = -1.0, max_mu = 0.0;
    for (int mi = 0; mi < mu_grid_size; ++mi) {
      const double mu = static_cast<double>(mi) / (mu_grid_size - 1);
      const double v = gap_bracket(gamma, mu);
      if (v > max_val) {
        max_val = v;
        max_mu = mu;
      }
    }
    if (first_gamma || max_val < out.per_node_constant) {
      first_gamma = false;
      out.per_node_constant = max_val;
      out.gamma_opt = gamma;
      out.mu_opt = max_mu;
    }
  }
  return out;
}

GapMinMax gap_constant_minmax() {
  // mu step 1e-3; gamma step ~1e-3 over [e-1, 6], wide enough to bracket the
  // crossover of the mu = 1 and mu = 1/2 profiles.
  return gap_constant_minmax(1001, kE - 1.0, 6.0, 4284);
}

namespace {
void check_schedule(const ChannelInstance& h, const Schedule<double>& schedule) {
  const std::uint64_t m = std::uint64_t{1} << h.n_relays;
  if (schedule.lambda.size() != m)
    throw std::invalid_argument("schedule length must be 2^N");
}
}  // namespace

double nnc_rate(const ChannelInstance& h, const Schedule<double>& schedule, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("nnc_rate: sigma2 must be positive");
  check_schedule(h, schedule);
  const int n = h.n_relays;
  const std::uint64_t m = std::uint64_t{1} << n;
  const double scale = 1.0 / (1.0 + sigma2);
  const double penalty_unit = std::log2(1.0 + 1.0 / sigma2);
  double worst = 0.0;
  bool first = true;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const CutSet cut = cut_from_index(i, n);
    double acc = 0.0;
    for (std::uint64_t j = 1; j <= m; ++j) {
      const double l = schedule.lambda[j - 1];
      if (l == 0.0) continue;
      acc += l * logdet2_identity_plus_gram(masked_gain_submatrix(h, cut, state_from_index(j, n)), scale);
    }
    // |A| counts the source-side nodes: the cut members plus the source.
    const double v = acc - (static_cast<double>(cut.members().size()) + 1.0) * penalty_unit;
    if (first || v < worst) {
      worst = v;
      first = false;
    }
  }
  return std::max(0.0, worst);
}

double cutset_det_rate(const ChannelInstance& h, const Schedule<double>& schedule) {
  check_schedule(h, schedule);
  const int n = h.n_relays;
  const std::uint64_t m = std::uint64_t{1} << n;
  double worst = 0.0;
  bool first = true;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const CutSet cut = cut_from_index(i, n);
    double acc = 0.0;
    for (std::uint64_t j = 1; j <= m; ++j) {
      const double l = schedule.lambda[j - 1];
      if (l == 0.0) continue;
      acc += l * logdet2_identity_plus_gram(masked_gain_submatrix(h, cut, state_from_index(j, n)), 1.0);
    }
    if (first || acc < worst) {
      worst = acc;
      first = false;
    }
  }
  return worst;
}

std::vector<double> sigma2_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw std::invalid_argument("sigma2_grid: bad range");
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int k = 0; k < points; ++k) out[k] = lo * std::exp(step * k);
  return out;
}

}  // namespace hdrelay
