#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "core/affine.hpp"
#include "core/families.hpp"

namespace qsub {

// [-w, w]^d with w = floor((M + M^-1 + ... + M^-(r-1)) * ring).
LatticeBox residual_window(const MaskFamily& f);

// a(M^r k) - M^{-rd} delta(k) over residual_window, row-major; a is the combined mask.
template <class T>
std::vector<T> interpolatory_residual(const MaskFamily& f, const std::vector<T>& params);

struct SolveOptions {
  double tolerance = 1e-12;  // on the max-norm of the residual
  int max_iterations = 200;
};

struct SolveResult {
  std::vector<std::string> variables;
  std::vector<double> variable_values;
  std::vector<double> params;  // all family parameters, family order
  double residual_inf = 0;
  int iterations = 0;
  int jacobian_rank = 0;
  int nullspace_dim = 0;
};

// Damped Gauss-Newton on the interpolatory residual. Parameters listed in `fixed` are replaced by
// their affine expressions (which may introduce new variables); all others are unknowns. Variables
// missing from `start` begin at 0 and, when some variables do have starts, are first fitted with the
// started ones held fixed.
SolveResult solve_parameters(const MaskFamily& f, const std::map<std::string, AffineExpr>& fixed,
                             const std::map<std::string, double>& start, const SolveOptions& opt = {});

// Roots of c[0] x^n + ... + c[n] via the companion matrix, real roots Newton-polished.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);
double real_root_near(const std::vector<double>& coeffs, double guess);

// Horner with rational coefficients given high degree first.
double eval_polynomial(const std::vector<Rational>& coeffs, double x);

}  // namespace qsub
