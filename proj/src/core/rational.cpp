#include "core/rational.hpp"

#include <charconv>
#include <cctype>

#include "core/error.hpp"

namespace qsub {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::incompatible_operands: return "incompatible-operands";
    case ErrorCode::invalid_coset: return "invalid-coset";
    case ErrorCode::invalid_coset_family: return "invalid-coset-family";
    case ErrorCode::invalid_direction: return "invalid-direction";
    case ErrorCode::not_divisible: return "not-divisible";
    case ErrorCode::invalid_dilation: return "invalid-dilation";
    case ErrorCode::level_too_large: return "level-too-large";
    case ErrorCode::hypothesis_violated: return "hypothesis-violated";
    case ErrorCode::insufficient_sum_rules: return "insufficient-sum-rules";
    case ErrorCode::invalid_parameters: return "invalid-parameters";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::unsupported_dimension: return "unsupported-dimension";
    case ErrorCode::numerical_failure: return "numerical-failure";
    case ErrorCode::no_convergence: return "no-convergence";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorCode::parse_error, "not a number: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::parse_error, "empty number");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) fail(ErrorCode::parse_error, "zero denominator: '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  bool decimal = s.find_first_of(".eE") != std::string_view::npos;
  if (!decimal) return Rational(parse_integer(s, text));
  if (!allow_decimal) fail(ErrorCode::parse_error, "decimal not allowed: '" + std::string(text) + "'");

  // Exact decimal: mantissa digits and an optional exponent.
  std::string_view mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    mant = s.substr(0, epos);
    mpz_class e = parse_integer(s.substr(epos + 1), text);
    if (!e.fits_slong_p() || abs(e) > 10000) fail(ErrorCode::parse_error, "exponent out of range");
    exp10 = e.get_si();
  }
  bool neg = false;
  if (!mant.empty() && (mant.front() == '+' || mant.front() == '-')) {
    neg = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  auto dot = mant.find('.');
  if (dot != std::string_view::npos) {
    digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  } else {
    digits = std::string(mant);
  }
  if (!all_digits(digits)) fail(ErrorCode::parse_error, "not a number: '" + std::string(text) + "'");
  mpz_class m(digits, 10);
  if (neg) m = -m;
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 < 0 ? Rational(m, p) : Rational(m * p);
  q.canonicalize();
  return q;
}

double parse_double(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.find('/') != std::string_view::npos) return parse_rational(s).get_d();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    fail(ErrorCode::parse_error, "not a number: '" + std::string(text) + "'");
  return v;
}

std::string format_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

Rational rational_power(long base, int exponent) {
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), mpz_class(base).get_mpz_t(),
             static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace qsub
