#pragma once

#include <algorithm>
#include <stdexcept>

#include "hdrelay/gdof.hpp"
#include "hdrelay/network.hpp"

namespace hdrelay {

// Two-relay network with the direct source-destination exponent normalized
// to 1: a_si is source -> relay i, a_id is relay i -> destination, b_i is the
// inter-relay exponent into relay i.
template <class T>
struct TwoRelayParams {
  T a_s1{}, a_s2{}, a_1d{}, a_2d{};
  T b_1{}, b_2{};

  TwoRelayParams<T> swapped_relays() const { return {a_s2, a_s1, a_2d, a_1d, b_2, b_1}; }
  // Exchanging the roles of source and destination.
  TwoRelayParams<T> swapped_ends() const { return {a_1d, a_2d, a_s1, a_s2, b_2, b_1}; }
};

enum class FdCase { case1, case2a, case2b, case2c };

struct FdRegime {
  FdCase label = FdCase::case1;
  bool best_relay_suboptimal = false;
  bool exception_set_O = false;
};

enum class ZeroState { zero_00, zero_11, either };

inline const char* to_string(FdCase c) {
  switch (c) {
    case FdCase::case1: return "CASE1";
    case FdCase::case2a: return "CASE2A";
    case FdCase::case2b: return "CASE2B";
    case FdCase::case2c: return "CASE2C";
  }
  return "?";
}

inline const char* to_string(ZeroState z) {
  switch (z) {
    case ZeroState::zero_00: return "ZERO_00";
    case ZeroState::zero_11: return "ZERO_11";
    case ZeroState::either: return "EITHER";
  }
  return "?";
}

template <class T>
ExponentMatrix<T> two_relay_network(const TwoRelayParams<T>& p) {
  // Rows: relay1, relay2, destination; columns: relay1, relay2, source.
  std::vector<T> beta{
      T(0),    p.b_1,   p.a_s1,
      p.b_2,   T(0),    p.a_s2,
      p.a_1d,  p.a_2d,  T(1),
  };
  return ExponentMatrix<T>(2, std::move(beta));
}

namespace detail {
template <class T>
void check_two_relay(const TwoRelayParams<T>& p) {
  if (p.a_s1 < T(0) || p.a_s2 < T(0) || p.a_1d < T(0) || p.a_2d < T(0) || p.b_1 < T(0) ||
      p.b_2 < T(0))
    throw std::invalid_argument("TwoRelayParams: exponents must be nonnegative");
}
template <class T>
T pos_part(const T& x) {
  return x > T(0) ? x : T(0);
}
}  // namespace detail

// Four-cut closed form of the full-duplex gDoF.
template <class T>
T fd_gdof_n2(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  const T one(1);
  const T c1 = std::max({one, p.a_s1, p.a_s2});
  const T c2 = std::max(p.a_s2 + p.a_1d, p.b_2 + one);
  const T c3 = std::max(p.a_s1 + p.a_2d, p.b_1 + one);
  const T c4 = std::max({one, p.a_1d, p.a_2d});
  return std::min({c1, c2, c3, c4});
}

template <class T>
T fd_best_relay_n2(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  return std::max({T(1), std::min(p.a_s1, p.a_1d), std::min(p.a_s2, p.a_2d)});
}

// Best-relay half-duplex gDoF; the 0/0 ratio is 0 so either weak hop
// degenerates to direct transmission.
template <class T>
T hd_best_relay_n2(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  auto hop_gain = [](const T& src, const T& dst) -> T {
    const T x = detail::pos_part(src - T(1));
    const T y = detail::pos_part(dst - T(1));
    if (x == T(0) || y == T(0)) return T(0);
    return T(x * y / (x + y));
  };
  return T(1) + std::max(hop_gain(p.a_s1, p.a_1d), hop_gain(p.a_s2, p.a_2d));
}

// Closed form for the symmetric example network (a_s1 = a_2d = x,
// a_s2 = a_1d = y, b_1 = b_2 = z); inputs are swapped when y > x.
template <class T>
T hd_gdof_symmetric_example(T x, T y, T z) {
  if (x < T(0) || y < T(0) || z < T(0))
    throw std::invalid_argument("hd_gdof_symmetric_example: negative exponent");
  if (x < y) std::swap(x, y);
  const T gx = detail::pos_part(x - T(1));
  const T gy = detail::pos_part(y - T(1));
  const T my = std::max(T(2) * y - T(1), z);
  const T mx = std::max(T(2) * x - T(1), z);
  T term1;
  if (gx == T(0) || my == T(0))
    term1 = T(0);
  else
    term1 = gx * my / (gx + my - gy);
  T term2;
  if (mx == T(0) || my == T(0))
    term2 = T(0);
  else
    term2 = mx * my / (mx + my);
  return T(1) + std::min(term1, term2);
}

// Constraint coefficients of the N=2 LP written directly from the closed
// forms, an independent route to the same matrix as the assignment builder.
// Rows are cuts {}, {2}, {1}, {1,2}; columns states 00, 01, 10, 11.
template <class T>
CoefficientMatrix<T> two_relay_coefficients(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  const T one(1);
  CoefficientMatrix<T> d{2, std::vector<T>(16, T(0))};
  d.at(1, 1) = std::max({one, p.a_s1, p.a_s2});
  d.at(1, 2) = std::max(one, p.a_s1);
  d.at(1, 3) = std::max(one, p.a_s2);
  d.at(1, 4) = one;
  d.at(2, 1) = std::max(one, p.a_s1);
  d.at(2, 2) = std::max(p.a_s1 + p.a_2d, p.b_1 + one);
  d.at(2, 3) = one;
  d.at(2, 4) = std::max(one, p.a_2d);
  d.at(3, 1) = std::max(one, p.a_s2);
  d.at(3, 2) = one;
  d.at(3, 3) = std::max(p.a_s2 + p.a_1d, p.b_2 + one);
  d.at(3, 4) = std::max(one, p.a_1d);
  d.at(4, 1) = one;
  d.at(4, 2) = std::max(one, p.a_2d);
  d.at(4, 3) = std::max(one, p.a_1d);
  d.at(4, 4) = std::max({one, p.a_1d, p.a_2d});
  return d;
}

template <class T>
FdRegime classify_fd_regime(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  FdRegime out;
  out.best_relay_suboptimal = fd_best_relay_n2(p) < fd_gdof_n2(p);

  const bool relay1_weakly_better = p.a_s1 >= p.a_s2 && p.a_1d >= p.a_2d;
  const bool relay2_weakly_better = p.a_s1 <= p.a_s2 && p.a_1d <= p.a_2d;
  if (relay1_weakly_better || relay2_weakly_better) {
    out.label = FdCase::case1;
    return out;
  }

  // Canonical case-2 orientation: relay 1 has the better source link,
  // relay 2 the better destination link.
  TwoRelayParams<T> q = (p.a_s1 > p.a_s2) ? p : p.swapped_relays();
  out.exception_set_O = (q.b_2 == T(0) && q.a_s2 + q.a_1d <= T(1)) ||
                        (q.a_1d == T(0) && q.b_2 + T(1) <= q.a_s2) ||
                        (q.a_s2 == T(0) && q.b_2 + T(1) <= q.a_1d);
  if (std::max(q.a_s2, q.a_1d) < std::min(q.a_s1, q.a_2d))
    out.label = FdCase::case2a;
  else if (q.a_2d <= q.a_s2)
    out.label = FdCase::case2b;
  else
    out.label = FdCase::case2c;
  return out;
}

// Which of the all-listen / all-transmit states can be forced to zero
// without loss of gDoF optimality.
template <class T>
ZeroState zeroable_state_n2(const TwoRelayParams<T>& p) {
  detail::check_two_relay(p);
  const T s1 = p.a_s1 - T(1), s2 = p.a_s2 - T(1);
  const T d1 = p.a_1d - T(1), d2 = p.a_2d - T(1);
  const bool all_positive = s1 > T(0) && s2 > T(0) && d1 > T(0) && d2 > T(0);
  const bool zero_00 = std::min(s1, s2) <= T(0) || (all_positive && s1 * s2 >= d1 * d2);
  const bool zero_11 = std::min(d1, d2) <= T(0) || (all_positive && s1 * s2 <= d1 * d2);
  if (zero_00 && zero_11) return ZeroState::either;
  return zero_00 ? ZeroState::zero_00 : ZeroState::zero_11;
}

// State indices (in [1:4]) that zeroable_state_n2 licenses forcing to zero.
inline std::vector<int> zeroable_state_indices(ZeroState z) {
  switch (z) {
    case ZeroState::zero_00: return {1};
    case ZeroState::zero_11: return {4};
    case ZeroState::either: return {1, 4};
  }
  return {};
}

}  // namespace hdrelay
