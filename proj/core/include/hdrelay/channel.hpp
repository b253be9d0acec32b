#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "hdrelay/network.hpp"

namespace hdrelay {

// A finite-SNR realization of an exponent matrix: |h_ij|^2 = SNR^beta_ij
// with i.i.d. uniform phases drawn deterministically from the seed. The
// relay-relay diagonal is realized as 0 (self-interference is removed).
struct ChannelInstance {
  int n_relays = 0;
  double snr = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXcd gains;  // (N+1) x (N+1), 0-based storage of h_ij
};

ChannelInstance realize_channel(const ExponentMatrix<double>& b, double snr, std::uint64_t seed);

// Cut submatrix of realized gains with the half-duplex mask applied
// (masked entries are exactly 0): rows {N+1} u A^c, columns {N+1} u A.
Eigen::MatrixXcd masked_gain_submatrix(const ChannelInstance& h, const CutSet& cut,
                                       const StateVector& state);

// log2 det(I + scale * M M^H). Diagonal pre-scaling keeps the Cholesky
// factorization accurate when the gains span many orders of magnitude
// (entries reach SNR^3 at the top of the SNR ladder).
double logdet2_identity_plus_gram(const Eigen::MatrixXcd& m, double scale = 1.0);

ExponentMatrix<double> to_double_matrix(const ExponentMatrix<Rational>& b);

// Deterministic stream splitting (splitmix64 over the pair).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hdrelay
