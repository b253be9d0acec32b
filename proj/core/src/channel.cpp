#include "hdrelay/channel.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace hdrelay {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ChannelInstance realize_channel(const ExponentMatrix<double>& b, double snr, std::uint64_t seed) {
  if (!(snr > 1.0))
    throw std::invalid_argument("realize_channel: snr must exceed 1");
  const int side = b.side();
  ChannelInstance h;
  h.n_relays = b.n_relays();
  h.snr = snr;
  h.seed = seed;
  h.gains.resize(side, side);
  std::mt19937_64 eng(seed);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (int i = 1; i <= side; ++i) {
    for (int j = 1; j <= side; ++j) {
      // Phase drawn for every entry so the stream does not depend on masks.
      const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
      const double theta = two_pi * u;
      if (i == j && i <= h.n_relays) {
        h.gains(i - 1, j - 1) = 0.0;
        continue;
      }
      const double mag = std::pow(snr, b.beta(i, j) / 2.0);
      h.gains(i - 1, j - 1) = std::polar(mag, theta);
    }
  }
  return h;
}

Eigen::MatrixXcd masked_gain_submatrix(const ChannelInstance& h, const CutSet& cut,
                                       const StateVector& state) {
  if (cut.n_relays != h.n_relays || state.n_relays != h.n_relays)
    throw std::invalid_argument("masked_gain_submatrix: size mismatch");
  auto [rows, cols] = detail::cut_labels(cut);
  const int dest = h.n_relays + 1;
  Eigen::MatrixXcd m(rows.size(), cols.size());
  m.setZero();
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) {
      const int rn = rows[r], cn = cols[c];
      if (rn != dest && cn != dest && rn == cn) continue;
      if (cn != dest && state.listens(cn)) continue;
      if (rn != dest && state.transmits(rn)) continue;
      m(r, c) = h.gains(rn - 1, cn - 1);
    }
  return m;
}

namespace {

// log2 of one squared minor |det M|^2 with per-row magnitude scaling, or
// -inf when the minor vanishes.
double log2_sq_minor(const Eigen::MatrixXcd& m) {
  const Eigen::Index r = m.rows();
  double log_scale = 0.0;
  Eigen::MatrixXcd scaled = m;
  for (Eigen::Index i = 0; i < r; ++i) {
    const double mx = scaled.row(i).cwiseAbs().maxCoeff();
    if (mx == 0.0) return -std::numeric_limits<double>::infinity();
    scaled.row(i) /= mx;
    log_scale += std::log2(mx);
  }
  const double d = std::abs(scaled.determinant());
  if (d == 0.0) return -std::numeric_limits<double>::infinity();
  return 2.0 * (log_scale + std::log2(d));
}

// det(I + HH^H) = sum over equal-size row/column subsets of |det H_{S,c}|^2
// (all-principal-minors expansion plus Cauchy-Binet). Every term is
// nonnegative, so a log-domain sum stays accurate across the enormous
// dynamic range of high-SNR gains, where a Cholesky of the Gram matrix
// loses the small pivots entirely.
double logdet_minor_expansion(const Eigen::MatrixXcd& h) {
  const int k = static_cast<int>(h.rows());
  const int n = static_cast<int>(h.cols());
  std::vector<double> terms{0.0};  // empty subset contributes det = 1
  for (std::uint32_t rmask = 1; rmask < (1u << k); ++rmask) {
    const int r = __builtin_popcount(rmask);
    if (r > n) continue;
    std::vector<int> rows;
    for (int i = 0; i < k; ++i)
      if (rmask & (1u << i)) rows.push_back(i);
    for (std::uint32_t cmask = 1; cmask < (1u << n); ++cmask) {
      if (__builtin_popcount(cmask) != r) continue;
      std::vector<int> cols;
      for (int j = 0; j < n; ++j)
        if (cmask & (1u << j)) cols.push_back(j);
      Eigen::MatrixXcd minor(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) minor(i, j) = h(rows[i], cols[j]);
      const double t = log2_sq_minor(minor);
      if (std::isfinite(t)) terms.push_back(t);
    }
  }
  double peak = terms.front();
  for (double t : terms) peak = std::max(peak, t);
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - peak);
  return peak + std::log2(acc);
}

}  // namespace

double logdet2_identity_plus_gram(const Eigen::MatrixXcd& m, double scale) {
  const Eigen::Index k = m.rows();
  if (k == 0 || m.cols() == 0) return 0.0;
  if (k <= 6 && m.cols() <= 12) return logdet_minor_expansion(std::sqrt(scale) * m);
  // Large matrices: Cholesky with unit-diagonal rescaling.
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(k, k) + scale * (m * m.adjoint());
  Eigen::VectorXd s(k);
  double log_scale = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    s(i) = std::sqrt(std::real(g(i, i)));
    log_scale += 2.0 * std::log2(s(i));
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) /= s(i) * s(j);
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) logdet += 2.0 * std::log2(std::real(llt.matrixL()(i, i)));
  return log_scale + logdet;
}

ExponentMatrix<double> to_double_matrix(const ExponentMatrix<Rational>& b) {
  std::vector<double> data;
  data.reserve(b.data().size());
  for (const Rational& q : b.data()) data.push_back(to_double(q));
  return ExponentMatrix<double>(b.n_relays(), std::move(data));
}

}  // namespace hdrelay
