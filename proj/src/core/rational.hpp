#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace qsub {

using Rational = mpq_class;

enum class Backend { rational, floating };

// Accepts "p", "p/q", and (optionally) decimal notation such as "-0.125" or "1e-3",
// which is converted exactly.
Rational parse_rational(std::string_view text, bool allow_decimal = true);
double parse_double(std::string_view text);
std::string format_rational(const Rational& x);
std::string format_double(double x);  // 17 significant digits, locale independent

template <class T>
struct Scalar;

template <>
struct Scalar<Rational> {
  static constexpr Backend backend = Backend::rational;
  static constexpr const char* name = "rational";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_long(long v) { return Rational(v); }
  static Rational from_rational(const Rational& x) { return x; }
  static bool near(const Rational& a, const Rational& b, double) { return a == b; }
};

template <>
struct Scalar<double> {
  static constexpr Backend backend = Backend::floating;
  static constexpr const char* name = "float";
  static bool is_zero(double x) { return x == 0.0; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
};

// n/d in lowest terms (mpq_class(n, d) alone leaves the fraction unreduced).
inline Rational make_rational(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// Exact M^e as a rational (e may be negative).
Rational rational_power(long base, int exponent);

}  // namespace qsub
