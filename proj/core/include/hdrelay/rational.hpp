#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hdrelay {

// Arbitrary-precision rational used by the exact solver mode. All exact-mode
// arithmetic in the library goes through this alias so the backing type can
// be swapped in one place.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 mantissa bits make mant * 2^53 an exact integer.
  const double scaled = std::ldexp(mant, 53);
  BigInt m(static_cast<long long>(scaled));
  exp -= 53;
  Rational r(m);
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << (-exp));
  }
  return r;
}

// Accepts "p/q", integers, and plain decimal strings ("1.5" -> 3/2).
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string head = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad fraction digits");
    bool negative = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
    BigInt ipart = head.empty() ? BigInt(0) : BigInt(head);
    BigInt scale = 1;
    for (size_t k = 0; k < frac.size(); ++k) scale *= 10;
    BigInt num = ipart * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
    if (negative) num = -num;
    return Rational(num, scale);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
  }
}

inline std::string rational_to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Comparison policy shared by the matching and LP code. The double
// specialization uses an absolute tolerance; the rational one is exact.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr double eps = 1e-9;
  static bool is_zero(double x) { return std::fabs(x) < eps; }
  static bool less(double a, double b) { return a < b - eps; }
  static bool positive(double x) { return x > eps; }
  static bool approx_equal(double a, double b) { return std::fabs(a - b) <= eps; }
  static double from_double(double x) { return x; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool positive(const Rational& x) { return x > 0; }
  static bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
  static Rational from_double(double x) { return rational_from_double(x); }
};

}  // namespace hdrelay
