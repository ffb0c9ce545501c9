#include "core/affine.hpp"

#include <cctype>

#include "core/error.hpp"

namespace qsub {

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant += o.constant;
  for (const auto& [k, v] : o.coeff) {
    coeff[k] += v;
    if (sgn(coeff[k]) == 0) coeff.erase(k);
  }
  return *this;
}

AffineExpr& AffineExpr::operator*=(const Rational& s) {
  constant *= s;
  if (sgn(s) == 0) {
    coeff.clear();
    return *this;
  }
  for (auto& [k, v] : coeff) v *= s;
  return *this;
}

double AffineExpr::evaluate(const std::map<std::string, double>& values) const {
  double s = constant.get_d();
  for (const auto& [k, v] : coeff) {
    auto it = values.find(k);
    if (it == values.end()) fail(ErrorCode::invalid_parameters, "no value for '" + k + "'");
    s += v.get_d() * it->second;
  }
  return s;
}

AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
AffineExpr operator-(AffineExpr a, const AffineExpr& b) {
  AffineExpr nb = b;
  nb *= Rational(-1);
  return a += nb;
}
AffineExpr operator*(AffineExpr a, const Rational& s) { return a *= s; }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  AffineExpr parse() {
    AffineExpr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorCode::parse_error, "expression '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AffineExpr expr() {
    AffineExpr e = term();
    for (;;) {
      if (accept('+'))
        e = e + term();
      else if (accept('-'))
        e = e - term();
      else
        return e;
    }
  }

  AffineExpr term() {
    AffineExpr e = factor();
    for (;;) {
      if (accept('*')) {
        AffineExpr f = factor();
        if (f.is_constant())
          e *= f.constant;
        else if (e.is_constant())
          e = f * e.constant;
        else
          error("product of two parameters is not affine");
      } else if (accept('/')) {
        AffineExpr f = factor();
        if (!f.is_constant() || sgn(f.constant) == 0) error("division by a non-constant or zero");
        e *= 1 / f.constant;
      } else {
        return e;
      }
    }
  }

  AffineExpr factor() {
    skip();
    if (accept('-')) return factor() * Rational(-1);
    if (accept('+')) return factor();
    if (accept('(')) {
      AffineExpr e = expr();
      if (!accept(')')) error("missing ')'");
      return e;
    }
    if (pos_ >= s_.size()) error("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      AffineExpr e;
      e.constant = parse_rational(s_.substr(start, pos_ - start));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      AffineExpr e;
      e.coeff[std::string(s_.substr(start, pos_ - start))] = 1;
      return e;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AffineExpr parse_affine(std::string_view text) { return Parser(text).parse(); }

std::string format_affine(const AffineExpr& e) {
  std::string s;
  for (const auto& [k, v] : e.coeff) {
    if (!s.empty()) s += sgn(v) < 0 ? " - " : " + ";
    else if (sgn(v) < 0) s += "-";
    Rational a = abs(v);
    if (a != 1) s += format_rational(a) + "*";
    s += k;
  }
  if (s.empty()) return format_rational(e.constant);
  if (sgn(e.constant) != 0) s += (sgn(e.constant) < 0 ? " - " : " + ") + format_rational(abs(e.constant));
  return s;
}

}  // namespace qsub
