#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hdrelay/network.hpp"
#include "hdrelay/rational.hpp"

namespace hdrelay {

// Result of the assignment problem on a MaskedWeightMatrix: the optimal
// total weight and the matched (row, column) pairs, 1-based positions.
// Pairs never reference ABSENT entries or padding.
template <class T>
struct Matching {
  T value{};
  std::vector<std::pair<int, int>> pairs;
};

namespace detail {

// Kuhn-Munkres with potentials (shortest augmenting paths) on an n x n cost
// matrix, minimizing. Works over any ordered field; `inf` must exceed any
// partial path cost reachable during the run.
// Returns col -> row assignment (1-based, col_match[0] unused).
template <class T>
std::vector<int> assignment_min_cost(const std::vector<std::vector<T>>& a, const T& inf) {
  const int n = static_cast<int>(a.size());
  std::vector<T> u(n + 1, T(0)), v(n + 1, T(0)), minv(n + 1, T(0));
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      T delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        T cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  return p;
}

// Maximum-weight value of a padded square problem. Padding and ABSENT cells
// enter as weight 0; since all real weights are nonnegative, the optimal
// perfect matching value on the padded matrix equals the optimal (possibly
// partial) matching value on the original.
template <class T>
T padded_max_value(const MaskedWeightMatrix<T>& m) {
  const int nr = static_cast<int>(m.n_rows());
  const int nc = static_cast<int>(m.n_cols());
  const int n = std::max(nr, nc);
  if (n == 0) return T(0);
  T max_w(0);
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (m.present(r, c) && m.weight(r, c) > max_w) max_w = m.weight(r, c);
  // Costs are negated weights; potentials stay within n * max_w.
  const T inf = (max_w + T(1)) * T(2 * n + 4);
  std::vector<std::vector<T>> cost(n, std::vector<T>(n, T(0)));
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (m.present(r, c)) cost[r][c] = -m.weight(r, c);
  const auto p = assignment_min_cost(cost, inf);
  T value(0);
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= nr && j <= nc && m.present(i - 1, j - 1)) value += m.weight(i - 1, j - 1);
  }
  return value;
}

// Scales a rational matrix by the least common denominator. Fails (returns
// false) when the scaled weights could overflow the int64 Hungarian run.
inline bool rational_matrix_to_int64(const MaskedWeightMatrix<Rational>& m,
                                     std::vector<std::vector<std::int64_t>>& w_out,
                                     std::int64_t& scale_out) {
  const int nr = static_cast<int>(m.n_rows());
  const int nc = static_cast<int>(m.n_cols());
  const int n = std::max(nr, nc);
  BigInt lcm_den = 1;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (m.present(r, c))
        lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(m.weight(r, c)));
  if (lcm_den > BigInt(1) << 40) return false;
  BigInt max_scaled = 0;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (m.present(r, c)) {
        const Rational& q = m.weight(r, c);
        BigInt scaled = boost::multiprecision::numerator(q) *
                        (lcm_den / boost::multiprecision::denominator(q));
        if (scaled > max_scaled) max_scaled = scaled;
      }
  // Potentials stay within n * max weight; leave generous headroom.
  if ((max_scaled + 1) * (4 * n + 8) > (BigInt(1) << 60)) return false;
  w_out.assign(nr, std::vector<std::int64_t>(nc, -1));  // -1 marks ABSENT
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (m.present(r, c)) {
        const Rational& q = m.weight(r, c);
        BigInt scaled = boost::multiprecision::numerator(q) *
                        (lcm_den / boost::multiprecision::denominator(q));
        w_out[r][c] = scaled.convert_to<std::int64_t>();
      }
  scale_out = lcm_den.convert_to<std::int64_t>();
  return true;
}

inline std::int64_t padded_max_value_int64(const std::vector<std::vector<std::int64_t>>& w,
                                           int nr, int nc) {
  const int n = std::max(nr, nc);
  if (n == 0) return 0;
  std::int64_t max_w = 0;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (w[r][c] > max_w) max_w = w[r][c];
  const std::int64_t inf = (max_w + 1) * (2 * n + 4);
  std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, 0));
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (w[r][c] > 0) cost[r][c] = -w[r][c];
  const auto p = assignment_min_cost(cost, inf);
  std::int64_t value = 0;
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= nr && j <= nc && w[i - 1][j - 1] > 0) value += w[i - 1][j - 1];
  }
  return value;
}

}  // namespace detail

// Optimal matching weight only (no pair list). This is the hot path of the
// LP coefficient construction; rational inputs are scaled to int64 when the
// common denominator allows it, which is exact.
template <class T>
T matching_value(const MaskedWeightMatrix<T>& m) {
  if (m.n_rows() == 0 || m.n_cols() == 0) return T(0);
  if constexpr (scalar_traits<T>::exact) {
    std::vector<std::vector<std::int64_t>> w;
    std::int64_t scale = 1;
    if (detail::rational_matrix_to_int64(m, w, scale)) {
      const std::int64_t v =
          detail::padded_max_value_int64(w, static_cast<int>(m.n_rows()),
                                         static_cast<int>(m.n_cols()));
      return Rational(BigInt(v), BigInt(scale));
    }
  }
  return detail::padded_max_value(m);
}

namespace detail {

// MWBM of the cells (row > r_from among unused rows) x (unused cols).
template <class T>
T remainder_value(const MaskedWeightMatrix<T>& m, int r_from, const std::vector<char>& col_used) {
  std::vector<int> rows, cols;
  for (int r = r_from; r < static_cast<int>(m.n_rows()); ++r) rows.push_back(r);
  for (int c = 0; c < static_cast<int>(m.n_cols()); ++c)
    if (!col_used[c]) cols.push_back(c);
  MaskedWeightMatrix<T> sub(std::vector<int>(rows.size(), 0), std::vector<int>(cols.size(), 0));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c)
      if (m.present(rows[r], cols[c])) sub.set(r, c, m.weight(rows[r], cols[c]));
  return matching_value(sub);
}

}  // namespace detail

// Full assignment solution with a canonical pair list: among all optimal
// matchings the lexicographically smallest (row, column) sequence, where a
// shorter list precedes any extension. Zero-weight pairs therefore never
// appear: dropping them is optimal and lexicographically smaller.
template <class T>
Matching<T> max_weight_matching(const MaskedWeightMatrix<T>& m) {
  using traits = scalar_traits<T>;
  Matching<T> out;
  out.value = matching_value(m);
  T fixed(0);
  std::vector<char> col_used(m.n_cols(), 0);
  int row = 0;
  while (row < static_cast<int>(m.n_rows())) {
    if (traits::approx_equal(fixed, out.value)) break;  // remaining pairs weigh zero
    bool fixed_here = false;
    for (int c = 0; c < static_cast<int>(m.n_cols()) && !fixed_here; ++c) {
      if (col_used[c] || !m.present(row, c)) continue;
      col_used[c] = 1;
      const T candidate = fixed + m.weight(row, c) + detail::remainder_value(m, row + 1, col_used);
      if (traits::approx_equal(candidate, out.value)) {
        fixed += m.weight(row, c);
        out.pairs.emplace_back(row + 1, c + 1);
        fixed_here = true;
      } else {
        col_used[c] = 0;
      }
    }
    ++row;
  }
  return out;
}

}  // namespace hdrelay
