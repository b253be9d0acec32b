#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hdrelay/rational.hpp"

namespace hdrelay {

// Node indexing follows the channel matrix convention: rows are receivers,
// columns are transmitters, nodes 1..N are the relays, node N+1 is the
// destination on the row side and the source on the column side. All public
// indices below are 1-based to match that convention.

// Binary listen/transmit configuration of the N relays. Bit k == 1 means
// relay k transmits, bit k == 0 means it listens. State index j in [1:2^N]
// is the decimal encoding of the bits of j-1, MSB = relay 1.
struct StateVector {
  int n_relays = 0;
  std::uint32_t mask = 0;  // bit (k-1) set <=> relay k transmits

  bool transmits(int relay) const { return (mask >> (relay - 1)) & 1u; }
  bool listens(int relay) const { return !transmits(relay); }

  std::vector<int> bits() const {
    std::vector<int> out(n_relays);
    for (int k = 1; k <= n_relays; ++k) out[k - 1] = transmits(k) ? 1 : 0;
    return out;
  }
};

// Subset of relays on the source side of a cut. Cut index i in [1:2^N]
// encodes the members in the binary expansion of i-1, MSB = relay 1.
struct CutSet {
  int n_relays = 0;
  std::uint32_t mask = 0;  // bit (k-1) set <=> relay k in the cut

  bool contains(int relay) const { return (mask >> (relay - 1)) & 1u; }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int k = 1; k <= n_relays; ++k)
      if (contains(k)) out.push_back(k);
    return out;
  }
  std::vector<int> complement() const {
    std::vector<int> out;
    for (int k = 1; k <= n_relays; ++k)
      if (!contains(k)) out.push_back(k);
    return out;
  }
};

namespace detail {
inline std::uint32_t index_to_msb_mask(std::uint64_t index, int n) {
  // index-1 expanded with MSB = relay 1; internally bit (k-1) is relay k.
  std::uint64_t raw = index - 1;
  std::uint32_t mask = 0;
  for (int k = 1; k <= n; ++k) {
    if ((raw >> (n - k)) & 1u) mask |= (1u << (k - 1));
  }
  return mask;
}
inline std::uint64_t msb_mask_to_index(std::uint32_t mask, int n) {
  std::uint64_t raw = 0;
  for (int k = 1; k <= n; ++k) {
    if ((mask >> (k - 1)) & 1u) raw |= (std::uint64_t{1} << (n - k));
  }
  return raw + 1;
}
inline void check_index(std::uint64_t index, int n, const char* what) {
  if (n < 1 || n > 30) throw std::invalid_argument(std::string(what) + ": relay count out of range");
  if (index < 1 || index > (std::uint64_t{1} << n))
    throw std::out_of_range(std::string(what) + ": index out of [1:2^N]");
}
}  // namespace detail

inline StateVector state_from_index(std::uint64_t j, int n_relays) {
  detail::check_index(j, n_relays, "state_from_index");
  return StateVector{n_relays, detail::index_to_msb_mask(j, n_relays)};
}

inline std::uint64_t index_from_state(const StateVector& s) {
  return detail::msb_mask_to_index(s.mask, s.n_relays);
}

inline CutSet cut_from_index(std::uint64_t i, int n_relays) {
  detail::check_index(i, n_relays, "cut_from_index");
  return CutSet{n_relays, detail::index_to_msb_mask(i, n_relays)};
}

inline std::uint64_t index_from_cut(const CutSet& c) {
  return detail::msb_mask_to_index(c.mask, c.n_relays);
}

// SNR-exponent matrix B of a network with N relays: beta(i,j) is the exponent
// of the link from transmitter j to receiver i. Entries are nonnegative; the
// relay-relay diagonal is carried but ignored by every operation.
template <class T>
class ExponentMatrix {
 public:
  ExponentMatrix(int n_relays, std::vector<T> beta_row_major)
      : n_(n_relays), beta_(std::move(beta_row_major)) {
    if (n_ < 1) throw std::invalid_argument("ExponentMatrix: need at least one relay");
    const size_t side = static_cast<size_t>(n_) + 1;
    if (beta_.size() != side * side)
      throw std::invalid_argument("ExponentMatrix: matrix must be (N+1)x(N+1)");
    for (size_t r = 0; r < side; ++r)
      for (size_t c = 0; c < side; ++c) {
        if (r == c && r < static_cast<size_t>(n_)) continue;  // ignored relay self-entry
        if (beta_[r * side + c] < T(0))
          throw std::invalid_argument("ExponentMatrix: exponents must be nonnegative");
      }
  }

  int n_relays() const { return n_; }
  int side() const { return n_ + 1; }

  // 1-based accessor; (i, N+1) is source->i, (N+1, j) is j->destination.
  const T& beta(int i, int j) const {
    return beta_[static_cast<size_t>(i - 1) * (n_ + 1) + (j - 1)];
  }
  T& beta(int i, int j) { return beta_[static_cast<size_t>(i - 1) * (n_ + 1) + (j - 1)]; }

  const T& direct() const { return beta(n_ + 1, n_ + 1); }
  const std::vector<T>& data() const { return beta_; }

 private:
  int n_;
  std::vector<T> beta_;  // row-major (N+1)x(N+1)
};

// Rectangular weight matrix with ABSENT entries, the input of the assignment
// solver. Rows and columns carry the node labels they were extracted from,
// node N+1 first, then ascending relay indices.
template <class T>
class MaskedWeightMatrix {
 public:
  MaskedWeightMatrix() = default;
  MaskedWeightMatrix(std::vector<int> row_labels, std::vector<int> col_labels)
      : rows_(std::move(row_labels)),
        cols_(std::move(col_labels)),
        w_(rows_.size() * cols_.size(), T(0)),
        present_(rows_.size() * cols_.size(), 0) {}

  size_t n_rows() const { return rows_.size(); }
  size_t n_cols() const { return cols_.size(); }
  const std::vector<int>& row_labels() const { return rows_; }
  const std::vector<int>& col_labels() const { return cols_; }

  bool present(size_t r, size_t c) const { return present_[r * cols_.size() + c] != 0; }
  const T& weight(size_t r, size_t c) const { return w_[r * cols_.size() + c]; }

  void set(size_t r, size_t c, T value) {
    if (value < T(0)) throw std::invalid_argument("MaskedWeightMatrix: negative weight");
    w_[r * cols_.size() + c] = std::move(value);
    present_[r * cols_.size() + c] = 1;
  }
  void set_absent(size_t r, size_t c) {
    w_[r * cols_.size() + c] = T(0);
    present_[r * cols_.size() + c] = 0;
  }

  bool row_fully_absent(size_t r) const {
    for (size_t c = 0; c < n_cols(); ++c)
      if (present(r, c)) return false;
    return true;
  }
  bool col_fully_absent(size_t c) const {
    for (size_t r = 0; r < n_rows(); ++r)
      if (present(r, c)) return false;
    return true;
  }

 private:
  std::vector<int> rows_, cols_;
  std::vector<T> w_;
  std::vector<std::uint8_t> present_;
};

namespace detail {
// Shared row/column layout of the cut submatrix B_{A,s}: rows are the
// destination plus the cut complement, columns the source plus the cut.
inline std::pair<std::vector<int>, std::vector<int>> cut_labels(const CutSet& cut) {
  std::vector<int> rows{cut.n_relays + 1};
  for (int r : cut.complement()) rows.push_back(r);
  std::vector<int> cols{cut.n_relays + 1};
  for (int c : cut.members()) cols.push_back(c);
  return {rows, cols};
}
}  // namespace detail

// B_{A_i,s_j}: retain rows {N+1} u A^c and columns {N+1} u A; an entry is
// ABSENT when the transmitting relay listens in s, when the receiving relay
// transmits in s, or on a relay self-loop. The source column and the
// destination row survive every mask.
template <class T>
MaskedWeightMatrix<T> masked_submatrix(const ExponentMatrix<T>& b, const CutSet& cut,
                                       const StateVector& state) {
  if (cut.n_relays != b.n_relays() || state.n_relays != b.n_relays())
    throw std::invalid_argument("masked_submatrix: size mismatch");
  auto [rows, cols] = detail::cut_labels(cut);
  const int dest = b.n_relays() + 1;
  MaskedWeightMatrix<T> out(rows, cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < cols.size(); ++c) {
      const int rn = rows[r], cn = cols[c];
      if (rn != dest && cn != dest && rn == cn) continue;         // self-loop
      if (cn != dest && state.listens(cn)) continue;              // silent transmitter
      if (rn != dest && state.transmits(rn)) continue;            // deaf receiver
      out.set(r, c, b.beta(rn, cn));
    }
  }
  return out;
}

// Full-duplex variant: same rows/columns, no half-duplex mask, relay
// self-loops still absent (they cannot occur across a cut anyway).
template <class T>
MaskedWeightMatrix<T> cut_submatrix_full_duplex(const ExponentMatrix<T>& b, const CutSet& cut) {
  if (cut.n_relays != b.n_relays())
    throw std::invalid_argument("cut_submatrix_full_duplex: size mismatch");
  auto [rows, cols] = detail::cut_labels(cut);
  const int dest = b.n_relays() + 1;
  MaskedWeightMatrix<T> out(rows, cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) {
      const int rn = rows[r], cn = cols[c];
      if (rn != dest && cn != dest && rn == cn) continue;
      out.set(r, c, b.beta(rn, cn));
    }
  return out;
}

}  // namespace hdrelay
