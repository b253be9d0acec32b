#pragma once

#include <vector>

#include "hdrelay/channel.hpp"
#include "hdrelay/gdof.hpp"

namespace hdrelay {

// Constant-gap formulas, all in bits.
double gap_hd_network(int n_relays);        // 2.021 (N+2)
double gap_hd_network_old(int n_relays);    // (N+2)/2 log2(4(N+2))
double gap_hd_diamond(int n_relays);        // diamond-topology bound
double gap_hd_diamond_approx(int n_relays);  // large-N approximation (~N bits)
double gap_fd_multicast(int k_nodes);       // 2 x 0.5105 K for K-node FD multicast

struct GapReport {
  int n_relays = 0;
  double gap_new_bits = 0.0;
  double gap_old_bits = 0.0;
  double gap_diamond_bits = 0.0;
  double gap_fd_multicast_bits = 0.0;  // for K = N + 2 nodes
};
GapReport gap_report(int n_relays);

// Per-node gap expression bracketed in the constant-gap proof, as a function
// of gamma = 1 + sigma^2 >= e - 1 and the cut fraction mu in [0, 1].
double gap_bracket(double gamma, double mu);

struct GapMinMax {
  double gamma_opt = 0.0;
  double mu_opt = 0.0;
  double per_node_constant = 0.0;
};

// Numeric min over gamma of max over mu of gap_bracket on uniform grids.
GapMinMax gap_constant_minmax(int mu_grid_size, double gamma_lo, double gamma_hi,
                              int gamma_grid_size);
GapMinMax gap_constant_minmax();  // default grids resolving to 1e-3

// Noisy-network-coding achievable rate with deterministic switch and
// compression noise sigma2, in bits per channel use (clamped at 0).
double nnc_rate(const ChannelInstance& h, const Schedule<double>& schedule, double sigma2);

// Cut-set style outer evaluation with identity input covariance and
// deterministic switch (no switch-entropy term).
double cutset_det_rate(const ChannelInstance& h, const Schedule<double>& schedule);

// Logarithmic sigma^2 grid used by the empirical gap checks.
std::vector<double> sigma2_grid(double lo, double hi, int points);

}  // namespace hdrelay
