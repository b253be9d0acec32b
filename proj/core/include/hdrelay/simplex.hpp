#pragma once

#include <stdexcept>
#include <vector>

#include "hdrelay/rational.hpp"

namespace hdrelay {

enum class LpStatus { optimal, unbounded, iteration_limit };

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::optimal;
  T objective{};
  std::vector<T> x;     // structural variables
  std::vector<T> dual;  // one multiplier per constraint, >= 0 at a max optimum
};

// Primal simplex on the dense tableau for
//     max c^T x   s.t.   A x <= b,  x >= 0,
// restricted to b >= 0 so the slack basis is the starting vertex (every LP in
// this project has that form). Entering and leaving variables follow Bland's
// smallest-index rule, which cannot cycle and makes results reproducible.
template <class T>
LpSolution<T> simplex_max(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                          const std::vector<T>& c, long max_pivots = -1) {
  using traits = scalar_traits<T>;
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  for (const T& bi : b)
    if (bi < T(0)) throw std::invalid_argument("simplex_max: requires b >= 0");

  const int cols = n + m + 1;  // structural, slack, rhs
  std::vector<std::vector<T>> t(m + 1, std::vector<T>(cols, T(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = T(1);
    t[i][cols - 1] = b[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  if (max_pivots < 0) max_pivots = 2000 + 50L * (m + n);
  LpSolution<T> sol;
  for (long pivots = 0;; ++pivots) {
    if (pivots > max_pivots) {
      sol.status = LpStatus::iteration_limit;
      return sol;
    }
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (traits::less(t[m][j], T(0))) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    for (int i = 0; i < m; ++i) {
      if (!traits::positive(t[i][enter])) continue;
      if (leave < 0) {
        leave = i;
        continue;
      }
      // ratio comparison without division: rhs_i / a_i vs rhs_l / a_l
      const T lhs = t[i][cols - 1] * t[leave][enter];
      const T rhs = t[leave][cols - 1] * t[i][enter];
      if (lhs < rhs || (!(rhs < lhs) && basis[i] < basis[leave])) leave = i;
    }
    if (leave < 0) {
      sol.status = LpStatus::unbounded;
      return sol;
    }

    const T pivot = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const T factor = t[i][enter];
      if (factor == T(0)) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  sol.status = LpStatus::optimal;
  sol.objective = t[m][cols - 1];
  sol.x.assign(n, T(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
  sol.dual.assign(m, T(0));
  for (int i = 0; i < m; ++i) sol.dual[i] = t[m][n + i];
  return sol;
}

}  // namespace hdrelay
