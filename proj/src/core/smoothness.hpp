#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/filter.hpp"
#include "core/subdivision.hpp"

namespace qsub {

// Largest m (capped) such that every coset moment of order < m equals M^{-d} times the full moment.
template <class T>
int sum_rule_order(const BasicFilter<T>& a, int M, std::optional<int> max_m = std::nullopt);

// a(M k) == M^{-d} delta(k)
template <class T>
bool is_interpolatory(const BasicFilter<T>& a, int M, double tol = 1e-12);

// Difference operators whose joint spectral radius bounds rho_m for a mask with the given symmetry.
// Anything not in the symmetric table falls back to all nabla^mu with |mu| = m.
std::vector<DifferenceSpec> required_difference_specs(const std::string& group, int m, int dim);

// b with (nabla-spec applied to a)^ = b^ * prod (block sum)^kappa, shifted to a nonnegative corner.
template <class T>
BasicFilter<T> divided_mask(const BasicFilter<T>& a, int M, const DifferenceSpec& spec);

// (max_gamma sum_k |S_b^n delta(gamma + M^n k)|)^{1/n}
template <class T>
double rho_upper(const BasicFilter<T>& b, int M, int n);

struct SmInfBound {
  double value = 0;
  int level = 0;
  std::vector<DifferenceSpec> specs;
  std::vector<double> rho;
};

template <class T>
SmInfBound sm_inf_lower(const BasicFilter<T>& a, int M, const std::vector<DifferenceSpec>& specs, int n);

struct Sm2Result {
  double value = 0;
  int sum_rules = 0;
  double spectral_radius = 0;
  int matrix_size = 0;
  int subspace_dim = 0;
};

template <class T>
Sm2Result sm2(const BasicFilter<T>& a, int M, std::optional<int> sum_rules = std::nullopt);

// Cross-check: spectral radius of the full transition matrix after removing M^{-j}, j < 2m, with
// multiplicity binom(j+d-1, d-1).
template <class T>
double sm2_by_eigenvalue_removal(const BasicFilter<T>& a, int M);

enum class EstimateKind { root, ratio };

// d/2 - log_M r_n with r_n = max_mu ||nabla^mu S_a^n delta||_2^{1/n} (root) or the successive
// ratio ||.||_n / ||.||_{n-1} (ratio).
template <class T>
double sm2_iterative_estimate(const BasicFilter<T>& a, int M, int n, const std::vector<MultiIndex>& mus,
                              EstimateKind kind);

inline double sm_inf_from_sm2(double sm2_value, int dim) { return sm2_value - dim / 2.0; }

}  // namespace qsub
