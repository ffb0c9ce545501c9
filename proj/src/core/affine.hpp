#pragma once

#include <map>
#include <string>
#include <string_view>

#include "core/rational.hpp"

namespace qsub {

// c + sum_j coeff_j * x_j with exact rational coefficients.
struct AffineExpr {
  Rational constant = 0;
  std::map<std::string, Rational> coeff;

  bool is_constant() const { return coeff.empty(); }
  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr& operator*=(const Rational& s);
  double evaluate(const std::map<std::string, double>& values) const;
};

AffineExpr operator+(AffineExpr a, const AffineExpr& b);
AffineExpr operator-(AffineExpr a, const AffineExpr& b);
AffineExpr operator*(AffineExpr a, const Rational& s);

// Parses expressions such as "11/64", "t/2", "-2*t + 1/4", "0.5*(t1 - t2)".
AffineExpr parse_affine(std::string_view text);
std::string format_affine(const AffineExpr& e);

}  // namespace qsub
