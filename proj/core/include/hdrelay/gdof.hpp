#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdrelay/mwbm.hpp"
#include "hdrelay/network.hpp"
#include "hdrelay/simplex.hpp"

namespace hdrelay {

// LP constraint coefficients of the gDoF program: at(i, j) is the assignment
// value of the masked cut submatrix for cut i under state j, both in [1:2^N].
template <class T>
struct CoefficientMatrix {
  int n_relays = 0;
  std::vector<T> a;  // row-major, cut-major

  std::uint64_t states() const { return std::uint64_t{1} << n_relays; }
  const T& at(std::uint64_t i, std::uint64_t j) const { return a[(i - 1) * states() + (j - 1)]; }
  T& at(std::uint64_t i, std::uint64_t j) { return a[(i - 1) * states() + (j - 1)]; }
};

template <class T>
struct Schedule {
  std::vector<T> lambda;  // lambda[j-1] = probability of state j
};

template <class T>
struct GdofSolution {
  T d{};
  Schedule<T> schedule;
  int support_size = 0;
  std::vector<int> tight_cuts;  // cut indices i whose constraint is tight
  std::string solver_mode;
};

namespace detail {

// Reusable Kuhn-Munkres scratch for the coefficient construction loop, which
// solves 4^N small assignment problems per network.
template <class V>
class PaddedAssignmentScratch {
 public:
  // weights: row-major nr x nc; present[k] == 0 marks ABSENT. Returns the
  // maximum (possibly partial) matching weight; absent cells count as 0.
  V padded_max(const std::vector<V>& w, const std::vector<char>& present, int nr, int nc) {
    const int n = std::max(nr, nc);
    if (n == 0) return V(0);
    V max_w(0);
    for (int k = 0; k < nr * nc; ++k)
      if (present[k] && w[k] > max_w) max_w = w[k];
    const V inf = (max_w + V(1)) * V(2 * n + 4);
    cost_.assign(static_cast<size_t>(n) * n, V(0));
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c)
        if (present[r * nc + c]) cost_[r * n + c] = -w[r * nc + c];
    u_.assign(n + 1, V(0));
    v_.assign(n + 1, V(0));
    p_.assign(n + 1, 0);
    way_.assign(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
      p_[0] = i;
      int j0 = 0;
      minv_.assign(n + 1, inf);
      used_.assign(n + 1, 0);
      do {
        used_[j0] = 1;
        const int i0 = p_[j0];
        int j1 = -1;
        V delta = inf;
        for (int j = 1; j <= n; ++j) {
          if (used_[j]) continue;
          V cur = cost_[(i0 - 1) * n + (j - 1)] - u_[i0] - v_[j];
          if (cur < minv_[j]) {
            minv_[j] = cur;
            way_[j] = j0;
          }
          if (minv_[j] < delta) {
            delta = minv_[j];
            j1 = j;
          }
        }
        for (int j = 0; j <= n; ++j) {
          if (used_[j]) {
            u_[p_[j]] += delta;
            v_[j] -= delta;
          } else {
            minv_[j] -= delta;
          }
        }
        j0 = j1;
      } while (p_[j0] != 0);
      do {
        const int j1 = way_[j0];
        p_[j0] = p_[j1];
        j0 = j1;
      } while (j0 != 0);
    }
    V value(0);
    for (int j = 1; j <= n; ++j) {
      const int i = p_[j];
      if (i >= 1 && i <= nr && j <= nc && present[(i - 1) * nc + (j - 1)])
        value += w[(i - 1) * nc + (j - 1)];
    }
    return value;
  }

 private:
  std::vector<V> cost_, u_, v_, minv_;
  std::vector<int> p_, way_;
  std::vector<char> used_;
};

// Shared masked-cell loop: fills w/present for (cut, state) from a prepared
// (N+1)x(N+1) grid of weights.
template <class V>
void fill_masked_cells(const std::vector<V>& grid, int side, const CutSet& cut,
                       const StateVector& state, const std::vector<int>& rows,
                       const std::vector<int>& cols, std::vector<V>& w, std::vector<char>& present) {
  const int dest = side;
  const int nr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(cols.size());
  w.assign(static_cast<size_t>(nr) * nc, V(0));
  present.assign(static_cast<size_t>(nr) * nc, 0);
  (void)cut;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c) {
      const int rn = rows[r], cn = cols[c];
      if (rn != dest && cn != dest && rn == cn) continue;
      if (cn != dest && state.listens(cn)) continue;
      if (rn != dest && state.transmits(rn)) continue;
      w[r * nc + c] = grid[(rn - 1) * side + (cn - 1)];
      present[r * nc + c] = 1;
    }
}

template <class T>
CoefficientMatrix<T> build_coefficients_generic(const ExponentMatrix<T>& b) {
  const int n = b.n_relays();
  const std::uint64_t m = std::uint64_t{1} << n;
  CoefficientMatrix<T> out{n, std::vector<T>(m * m, T(0))};
  for (std::uint64_t i = 1; i <= m; ++i) {
    const CutSet cut = cut_from_index(i, n);
    for (std::uint64_t j = 1; j <= m; ++j) {
      const StateVector state = state_from_index(j, n);
      out.at(i, j) = matching_value(masked_submatrix(b, cut, state));
    }
  }
  return out;
}

// Exact fast path: scale the whole exponent matrix by its common denominator
// once and run every assignment over int64. Falls back to the generic
// rational path when the scaling would not be safe.
inline bool build_coefficients_int64(const ExponentMatrix<Rational>& b,
                                     CoefficientMatrix<Rational>& out) {
  const int n = b.n_relays();
  const int side = n + 1;
  BigInt lcm_den = 1;
  for (int r = 1; r <= side; ++r)
    for (int c = 1; c <= side; ++c) {
      if (r == c && r <= n) continue;
      lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(b.beta(r, c)));
    }
  if (lcm_den > BigInt(1) << 40) return false;
  BigInt max_scaled = 0;
  std::vector<std::int64_t> grid(static_cast<size_t>(side) * side, 0);
  for (int r = 1; r <= side; ++r)
    for (int c = 1; c <= side; ++c) {
      if (r == c && r <= n) continue;
      const Rational& q = b.beta(r, c);
      BigInt scaled =
          boost::multiprecision::numerator(q) * (lcm_den / boost::multiprecision::denominator(q));
      if (scaled > max_scaled) max_scaled = scaled;
      grid[(r - 1) * side + (c - 1)] = scaled.convert_to<std::int64_t>();
    }
  if ((max_scaled + 1) * (4 * side + 8) > (BigInt(1) << 60)) return false;

  const std::uint64_t m = std::uint64_t{1} << n;
  out.n_relays = n;
  out.a.assign(m * m, Rational(0));
  const Rational scale(BigInt(1), lcm_den);
  PaddedAssignmentScratch<std::int64_t> scratch;
  std::vector<std::int64_t> w;
  std::vector<char> present;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const CutSet cut = cut_from_index(i, n);
    auto [rows, cols] = cut_labels(cut);
    for (std::uint64_t j = 1; j <= m; ++j) {
      const StateVector state = state_from_index(j, n);
      fill_masked_cells(grid, side, cut, state, rows, cols, w, present);
      const std::int64_t v = scratch.padded_max(w, present, static_cast<int>(rows.size()),
                                                static_cast<int>(cols.size()));
      out.at(i, j) = Rational(v) * scale;
    }
  }
  return true;
}

inline void build_coefficients_double(const ExponentMatrix<double>& b,
                                      CoefficientMatrix<double>& out) {
  const int n = b.n_relays();
  const int side = n + 1;
  std::vector<double> grid(b.data());
  const std::uint64_t m = std::uint64_t{1} << n;
  out.n_relays = n;
  out.a.assign(m * m, 0.0);
  PaddedAssignmentScratch<double> scratch;
  std::vector<double> w;
  std::vector<char> present;
  for (std::uint64_t i = 1; i <= m; ++i) {
    const CutSet cut = cut_from_index(i, n);
    auto [rows, cols] = cut_labels(cut);
    for (std::uint64_t j = 1; j <= m; ++j) {
      const StateVector state = state_from_index(j, n);
      fill_masked_cells(grid, side, cut, state, rows, cols, w, present);
      out.at(i, j) = scratch.padded_max(w, present, static_cast<int>(rows.size()),
                                        static_cast<int>(cols.size()));
    }
  }
}

}  // namespace detail

template <class T>
CoefficientMatrix<T> build_coefficient_matrix(const ExponentMatrix<T>& b) {
  if constexpr (scalar_traits<T>::exact) {
    CoefficientMatrix<Rational> out;
    if (detail::build_coefficients_int64(b, out)) return out;
    return detail::build_coefficients_generic(b);
  } else {
    CoefficientMatrix<double> out;
    detail::build_coefficients_double(b, out);
    return out;
  }
}

// Full-duplex gDoF: min over cuts of the unmasked assignment value.
template <class T>
T fd_gdof(const ExponentMatrix<T>& b) {
  const std::uint64_t m = std::uint64_t{1} << b.n_relays();
  T best{};
  for (std::uint64_t i = 1; i <= m; ++i) {
    T v = matching_value(cut_submatrix_full_duplex(b, cut_from_index(i, b.n_relays())));
    if (i == 1 || v < best) best = v;
  }
  return best;
}

namespace detail {

// Exact dense Gaussian elimination for the small vertex systems of the
// float-guided exact solve. Returns false on a singular matrix.
inline bool solve_rational_system(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                                  std::vector<Rational>& out) {
  const int n = static_cast<int>(m.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      m[r][col] = 0;
      for (int c = col + 1; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  out.assign(n, Rational(0));
  for (int r = n - 1; r >= 0; --r) {
    Rational acc = rhs[r];
    for (int c = r + 1; c < n; ++c) acc -= m[r][c] * out[c];
    out[r] = acc / m[r][r];
  }
  return true;
}

// Incremental row-independence filter over exact arithmetic.
class RationalEchelon {
 public:
  explicit RationalEchelon(int width) : width_(width) {}

  // Returns true and absorbs the row when it is independent of the rows
  // already kept.
  bool try_add(std::vector<Rational> row) {
    for (const auto& [lead, vec] : rows_) {
      if (row[lead] == 0) continue;
      const Rational f = row[lead] / vec[lead];
      for (int c = 0; c < width_; ++c) row[c] -= f * vec[c];
      row[lead] = 0;
    }
    int lead = -1;
    for (int c = 0; c < width_; ++c)
      if (row[c] != 0) {
        lead = c;
        break;
      }
    if (lead < 0) return false;
    rows_.emplace_back(lead, std::move(row));
    return true;
  }

  int size() const { return static_cast<int>(rows_.size()); }

 private:
  int width_;
  std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

template <class T>
struct MasterResult {
  T d{};
  std::vector<T> lambda;  // aligned with the column set
  std::vector<T> y;       // aligned with the row set
  T u{};                  // dual of the probability-mass row
};

template <class T>
MasterResult<T> solve_gdof_master(const CoefficientMatrix<T>& A, const std::vector<int>& rows,
                                  const std::vector<int>& cols) {
  const int mt = static_cast<int>(rows.size());
  const int nj = static_cast<int>(cols.size());
  std::vector<std::vector<T>> lp(mt + 1, std::vector<T>(nj + 1, T(0)));
  std::vector<T> b(mt + 1, T(0)), c(nj + 1, T(0));
  for (int r = 0; r < mt; ++r) {
    for (int k = 0; k < nj; ++k) lp[r][k] = -A.at(rows[r], cols[k]);
    lp[r][nj] = T(1);  // d
  }
  for (int k = 0; k < nj; ++k) lp[mt][k] = T(1);
  b[mt] = T(1);
  c[nj] = T(1);
  // Bland's rule terminates finitely in exact arithmetic; the cap there is
  // only a safety net. The float cap stays tight since tolerance-based
  // pivoting can stall on degenerate bases (callers fall back to the exact
  // path when that happens).
  const long cap = scalar_traits<T>::exact ? 500000 : -1;
  auto s = simplex_max(lp, b, c, cap);
  if (s.status != LpStatus::optimal)
    throw std::runtime_error("solve_gdof: simplex failed to converge");
  MasterResult<T> out;
  out.d = s.x[nj];
  out.lambda.assign(s.x.begin(), s.x.begin() + nj);
  out.y.assign(s.dual.begin(), s.dual.begin() + mt);
  out.u = s.dual[mt];
  return out;
}

inline void collect_allowed(std::uint64_t m, const std::vector<int>& forced_zero,
                            std::vector<char>& allowed, std::vector<int>& allowed_list,
                            int& first_allowed) {
  allowed.assign(m + 1, 1);
  for (int j : forced_zero) {
    if (j < 1 || static_cast<std::uint64_t>(j) > m)
      throw std::invalid_argument("solve_gdof_restricted: forced state out of range");
    allowed[j] = 0;
  }
  first_allowed = 0;
  allowed_list.clear();
  for (std::uint64_t j = 1; j <= m; ++j)
    if (allowed[j]) {
      allowed_list.push_back(static_cast<int>(j));
      if (!first_allowed) first_allowed = static_cast<int>(j);
    }
  if (allowed_list.empty())
    throw std::invalid_argument("solve_gdof_restricted: all states forced to zero");
}

// Dense tableau for small instances, delayed row/column generation around the
// same simplex for larger ones. Optimality of the generation loop is
// certified by pricing every cut and every state before exit.
template <class T>
GdofSolution<T> solve_restricted_core(const CoefficientMatrix<T>& A,
                                      const std::vector<int>& forced_zero,
                                      const std::vector<int>* warm_rows = nullptr,
                                      const std::vector<int>* warm_cols = nullptr) {
  using traits = scalar_traits<T>;
  const std::uint64_t m = A.states();
  std::vector<char> allowed;
  std::vector<int> allowed_list;
  int first_allowed = 0;
  collect_allowed(m, forced_zero, allowed, allowed_list, first_allowed);

  std::vector<int> rows, cols;
  std::vector<T> lambda_master;
  T d{};

  if (m <= 16) {
    // Dense: all cuts, all allowed states.
    rows.resize(m);
    for (std::uint64_t i = 1; i <= m; ++i) rows[i - 1] = static_cast<int>(i);
    cols = allowed_list;
    auto res = detail::solve_gdof_master(A, rows, cols);
    d = res.d;
    lambda_master = res.lambda;
  } else {
    std::vector<char> in_rows(m + 1, 0), in_cols(m + 1, 0);
    if (warm_rows)
      for (int i : *warm_rows)
        if (i >= 1 && static_cast<std::uint64_t>(i) <= m) in_rows[i] = 1;
    if (warm_cols)
      for (int j : *warm_cols)
        if (j >= 1 && static_cast<std::uint64_t>(j) <= m && allowed[j]) in_cols[j] = 1;
    in_rows[1] = in_rows[m] = 1;
    in_cols[first_allowed] = in_cols[allowed_list.back()] = 1;
    for (std::uint64_t k = 1; k <= m; ++k) {
      if (in_rows[k]) rows.push_back(static_cast<int>(k));
      if (in_cols[k]) cols.push_back(static_cast<int>(k));
    }

    const long max_rounds = 4 * static_cast<long>(m) + 64;
    constexpr int kBatch = 8;
    detail::MasterResult<T> res;
    for (long round = 0;; ++round) {
      if (round > max_rounds) throw std::runtime_error("solve_gdof: generation failed to converge");
      res = detail::solve_gdof_master(A, rows, cols);

      int added = 0;
      for (std::uint64_t i = 1; i <= m && added < kBatch; ++i) {
        if (in_rows[i]) continue;
        T v(0);
        for (size_t k = 0; k < cols.size(); ++k) {
          if (res.lambda[k] == T(0)) continue;
          v += A.at(i, cols[k]) * res.lambda[k];
        }
        if (traits::less(v, res.d)) {
          in_rows[i] = 1;
          rows.insert(std::lower_bound(rows.begin(), rows.end(), static_cast<int>(i)),
                      static_cast<int>(i));
          ++added;
        }
      }
      if (added > 0) continue;

      for (int j : allowed_list) {
        if (in_cols[j]) continue;
        T s(0);
        for (size_t r = 0; r < rows.size(); ++r) {
          if (res.y[r] == T(0)) continue;
          s += A.at(rows[r], j) * res.y[r];
        }
        if (traits::less(res.u, s)) {
          in_cols[j] = 1;
          cols.insert(std::lower_bound(cols.begin(), cols.end(), j), j);
          if (++added == kBatch) break;
        }
      }
      if (added > 0) continue;
      break;
    }
    d = res.d;
    lambda_master = res.lambda;
  }

  GdofSolution<T> sol;
  sol.solver_mode = traits::exact ? "exact" : "float";
  sol.schedule.lambda.assign(m, T(0));
  for (size_t k = 0; k < cols.size(); ++k) sol.schedule.lambda[cols[k] - 1] = lambda_master[k];
  sol.d = d;

  if (traits::is_zero(sol.d)) {
    // Degenerate network with a zero cut: any schedule attains 0. Report the
    // canonical point mass on the first allowed state.
    sol.d = T(0);
    std::fill(sol.schedule.lambda.begin(), sol.schedule.lambda.end(), T(0));
    sol.schedule.lambda[first_allowed - 1] = T(1);
  } else {
    T total(0);
    for (const T& l : sol.schedule.lambda) total += l;
    if constexpr (traits::exact) {
      if (total != T(1)) throw std::runtime_error("solve_gdof: optimal schedule mass != 1");
    } else {
      if (total <= 0.0) throw std::runtime_error("solve_gdof: empty schedule");
      for (T& l : sol.schedule.lambda) l /= total;
    }
  }

  for (std::uint64_t j = 1; j <= m; ++j)
    if (traits::positive(sol.schedule.lambda[j - 1])) ++sol.support_size;
  for (std::uint64_t i = 1; i <= m; ++i) {
    T v(0);
    for (std::uint64_t j = 1; j <= m; ++j) {
      const T& l = sol.schedule.lambda[j - 1];
      if (l == T(0)) continue;
      v += A.at(i, j) * l;
    }
    bool tight;
    if constexpr (traits::exact)
      tight = (v == sol.d);
    else
      tight = std::fabs(v - sol.d) < 1e-9;
    if (tight) sol.tight_cuts.push_back(static_cast<int>(i));
  }
  return sol;
}

inline GdofSolution<Rational> canonical_zero_solution(std::uint64_t m, int first_allowed) {
  GdofSolution<Rational> out;
  out.solver_mode = "exact";
  out.d = Rational(0);
  out.schedule.lambda.assign(m, Rational(0));
  out.schedule.lambda[first_allowed - 1] = Rational(1);
  out.support_size = 1;
  return out;
}

// Exact certification of a float vertex: solves the tight system of the
// candidate support exactly and checks full primal and dual feasibility, so
// success proves optimality in exact arithmetic. Any failure falls back to
// the all-rational solver.
inline bool certify_exact_vertex(const CoefficientMatrix<Rational>& A,
                                 const CoefficientMatrix<double>& approx,
                                 const std::vector<int>& allowed_list,
                                 const GdofSolution<double>& guess, GdofSolution<Rational>& out) {
  const std::uint64_t m = A.states();
  std::vector<int> support;
  for (int j : allowed_list)
    if (guess.schedule.lambda[j - 1] > 1e-9) support.push_back(j);
  const int k = static_cast<int>(support.size());
  if (k == 0) return false;

  // Tight-row candidates in order of float slack.
  std::vector<std::pair<double, int>> cand;
  for (std::uint64_t i = 1; i <= m; ++i) {
    double v = 0.0;
    for (int j : support) v += approx.at(i, j) * guess.schedule.lambda[j - 1];
    const double slack = std::fabs(v - guess.d);
    if (slack < 1e-6) cand.emplace_back(slack, static_cast<int>(i));
  }
  std::sort(cand.begin(), cand.end());

  // Vertex system over (lambda_support, d): mass row plus k independent
  // tight cut rows.
  RationalEchelon echelon(k + 1);
  std::vector<std::vector<Rational>> sys;
  std::vector<Rational> rhs;
  std::vector<int> rows_used;
  {
    std::vector<Rational> mass(k + 1, Rational(1));
    mass[k] = Rational(0);
    echelon.try_add(mass);
    sys.push_back(std::move(mass));
    rhs.push_back(Rational(1));
  }
  for (const auto& [slack, i] : cand) {
    if (static_cast<int>(sys.size()) == k + 1) break;
    std::vector<Rational> row(k + 1);
    for (int t = 0; t < k; ++t) row[t] = A.at(i, support[t]);
    row[k] = Rational(-1);
    if (echelon.try_add(row)) {
      sys.push_back(std::move(row));
      rhs.push_back(Rational(0));
      rows_used.push_back(i);
    }
  }
  if (static_cast<int>(sys.size()) != k + 1) return false;
  std::vector<Rational> x;
  if (!solve_rational_system(sys, rhs, x)) return false;
  const Rational d = x[k];
  if (!(d > 0)) return false;
  for (int t = 0; t < k; ++t)
    if (x[t] < 0) return false;

  // Primal feasibility over every cut; collect the exact tight set.
  std::vector<int> tight;
  for (std::uint64_t i = 1; i <= m; ++i) {
    Rational v(0);
    for (int t = 0; t < k; ++t)
      if (x[t] != 0) v += A.at(i, support[t]) * x[t];
    if (v < d) return false;
    if (v == d) tight.push_back(static_cast<int>(i));
  }

  // Dual certificate: multipliers on the rows used, equality on the support
  // columns, feasibility (<= d) on every other allowed column.
  std::vector<std::vector<Rational>> ds(k + 1, std::vector<Rational>(k + 1, Rational(0)));
  std::vector<Rational> drhs(k + 1, Rational(0));
  for (int t = 0; t < k; ++t) {
    for (int r = 0; r < k; ++r) ds[t][r] = A.at(rows_used[r], support[t]);
    ds[t][k] = Rational(-1);
  }
  for (int r = 0; r < k; ++r) ds[k][r] = Rational(1);
  drhs[k] = Rational(1);
  std::vector<Rational> y;
  if (!solve_rational_system(ds, drhs, y)) return false;
  if (y[k] != d) return false;
  for (int r = 0; r < k; ++r)
    if (y[r] < 0) return false;
  for (int j : allowed_list) {
    Rational s(0);
    for (int r = 0; r < k; ++r)
      if (y[r] != 0) s += A.at(rows_used[r], j) * y[r];
    if (s > d) return false;
  }

  out.d = d;
  out.solver_mode = "exact";
  out.schedule.lambda.assign(m, Rational(0));
  out.support_size = 0;
  for (int t = 0; t < k; ++t) {
    out.schedule.lambda[support[t] - 1] = x[t];
    if (x[t] > 0) ++out.support_size;
  }
  out.tight_cuts = std::move(tight);
  return true;
}

// Exact solve guided by a float solve of the mirrored coefficients. The
// float run proposes the vertex; the rational certificate makes the result
// exact. mirror may be null (it is then built locally).
inline GdofSolution<Rational> solve_restricted_exact(const CoefficientMatrix<Rational>& A,
                                                     const CoefficientMatrix<double>* mirror,
                                                     const std::vector<int>& forced_zero,
                                                     const std::vector<int>* warm_rows = nullptr,
                                                     const std::vector<int>* warm_cols = nullptr) {
  const std::uint64_t m = A.states();
  std::vector<char> allowed;
  std::vector<int> allowed_list;
  int first_allowed = 0;
  collect_allowed(m, forced_zero, allowed, allowed_list, first_allowed);

  CoefficientMatrix<double> local;
  if (!mirror) {
    local.n_relays = A.n_relays;
    local.a.reserve(A.a.size());
    for (const Rational& q : A.a) local.a.push_back(to_double(q));
    mirror = &local;
  }
  GdofSolution<double> guess;
  try {
    guess = solve_restricted_core(*mirror, forced_zero, warm_rows, warm_cols);
  } catch (const std::runtime_error&) {
    // Degenerate float stall; the all-rational path below is guaranteed to
    // terminate under Bland's rule.
    return solve_restricted_core(A, forced_zero, warm_rows, warm_cols);
  }

  if (guess.d < 1e-9) {
    // d = 0 exactly iff some cut row vanishes on every allowed state.
    for (std::uint64_t i = 1; i <= m; ++i) {
      bool zero_row = true;
      for (int j : allowed_list)
        if (A.at(i, j) != 0) {
          zero_row = false;
          break;
        }
      if (zero_row) {
        auto out = canonical_zero_solution(m, first_allowed);
        for (std::uint64_t i2 = 1; i2 <= m; ++i2)
          if (A.at(i2, first_allowed) == 0) out.tight_cuts.push_back(static_cast<int>(i2));
        return out;
      }
    }
  }
  GdofSolution<Rational> out;
  if (certify_exact_vertex(A, *mirror, allowed_list, guess, out)) return out;
  return solve_restricted_core(A, forced_zero, warm_rows, warm_cols);
}

}  // namespace detail

// Solves the cut-set gDoF LP
//   max d  s.t.  d <= sum_j a_ij lambda_j for every cut i,  sum lambda <= 1
// restricted to lambda_j = 0 for j in forced_zero. Exact instances beyond
// N = 4 run a float solve first and promote it to an exact optimum through a
// rational primal/dual certificate.
template <class T>
GdofSolution<T> solve_gdof_restricted(const CoefficientMatrix<T>& A,
                                      const std::vector<int>& forced_zero,
                                      const std::vector<int>* warm_rows = nullptr,
                                      const std::vector<int>* warm_cols = nullptr) {
  for (const T& v : A.a)
    if (v < T(0)) throw std::invalid_argument("solve_gdof: negative coefficient");
  if constexpr (scalar_traits<T>::exact) {
    if (A.states() > 16)
      return detail::solve_restricted_exact(A, nullptr, forced_zero, warm_rows, warm_cols);
  }
  return detail::solve_restricted_core(A, forced_zero, warm_rows, warm_cols);
}

template <class T>
GdofSolution<T> solve_gdof(const CoefficientMatrix<T>& A) {
  return solve_gdof_restricted(A, {});
}

// Searches for a small-support optimal schedule by repeatedly forcing the
// lightest support states to zero and keeping any zeroing that preserves the
// optimum. Greedy, deterministic; the result is optimal and locally minimal.
template <class T>
GdofSolution<T> minimum_support_solution(const CoefficientMatrix<T>& A,
                                         std::vector<int> forced_zero = {}) {
  using traits = scalar_traits<T>;
  for (const T& v : A.a)
    if (v < T(0)) throw std::invalid_argument("solve_gdof: negative coefficient");

  CoefficientMatrix<double> mirror;
  const bool guided = scalar_traits<T>::exact && A.states() > 16;
  if (guided) {
    mirror.n_relays = A.n_relays;
    mirror.a.reserve(A.a.size());
    for (const T& q : A.a) mirror.a.push_back(to_double(q));
  }
  auto resolve = [&](const std::vector<int>& forced, const std::vector<int>* wr,
                     const std::vector<int>* wc) -> GdofSolution<T> {
    if constexpr (scalar_traits<T>::exact) {
      if (guided) return detail::solve_restricted_exact(A, &mirror, forced, wr, wc);
    }
    return detail::solve_restricted_core(A, forced, wr, wc);
  };

  GdofSolution<T> sol = resolve(forced_zero, nullptr, nullptr);
  const T target = sol.d;
  for (int pass = 0; pass < sol.support_size + 2; ++pass) {
    // Candidates from the current support, lightest first.
    std::vector<int> support;
    for (size_t j = 0; j < sol.schedule.lambda.size(); ++j)
      if (traits::positive(sol.schedule.lambda[j])) support.push_back(static_cast<int>(j) + 1);
    if (support.size() <= 1) break;
    std::stable_sort(support.begin(), support.end(), [&](int a, int b) {
      return sol.schedule.lambda[a - 1] < sol.schedule.lambda[b - 1];
    });
    bool improved = false;
    for (int cand : support) {
      if (!traits::positive(sol.schedule.lambda[cand - 1])) continue;  // already gone
      std::vector<int> trial_forced = forced_zero;
      trial_forced.push_back(cand);
      std::vector<int> warm_cols;
      for (size_t j = 0; j < sol.schedule.lambda.size(); ++j)
        if (traits::positive(sol.schedule.lambda[j]) && static_cast<int>(j) + 1 != cand)
          warm_cols.push_back(static_cast<int>(j) + 1);
      GdofSolution<T> trial;
      try {
        trial = resolve(trial_forced, &sol.tight_cuts, &warm_cols);
      } catch (const std::invalid_argument&) {
        continue;  // would force every state to zero
      }
      if (traits::approx_equal(trial.d, target)) {
        forced_zero = std::move(trial_forced);
        sol = std::move(trial);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return sol;
}

}  // namespace hdrelay
