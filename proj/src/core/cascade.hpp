#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/subdivision.hpp"

namespace qsub {

// Samples at the points M^{-level} k, k in box.
struct SampleGrid {
  int dim = 1;
  int level = 0;
  int dilation = 2;
  MultiIndex mu;
  LatticeBox box;
  std::vector<double> values;

  double at(const MultiIndex& k) const { return box.contains(k) ? values[box.offset(k)] : 0.0; }
  double scale() const;  // M^{-level}
};

// M^{|mu| n} nabla^mu S^{n,r} v on its support box; v defaults to delta. Computed in floating point.
template <class T>
SampleGrid cascade_samples(const Scheme<T>& s, int n, const MultiIndex& mu, const BasicFilter<T>* v = nullptr);

struct ConvergenceRow {
  MultiIndex mu;
  int level = 0;
  double residual = 0;
};

struct ConvergenceSeries {
  MultiIndex mu;
  double slope = 0;  // least-squares slope of log_M(residual) against level
  bool decays = false;
};

struct ConvergenceReport {
  int reference_level = 0;
  std::vector<ConvergenceRow> rows;
  std::vector<ConvergenceSeries> series;
};

// sup over the level-n grid of |level-n sample - level-n_max sample| for all |mu| <= m, n < n_max.
template <class T>
ConvergenceReport convergence_residuals(const Scheme<T>& s, int m, int n_max);

enum class Normalize { minmax, symmetric };

std::string export_csv(const SampleGrid& g);
SampleGrid parse_grid_csv(std::string_view text, int level, int dilation);
std::string export_pgm(const SampleGrid& g, Normalize mode);  // binary P5, 16-bit

}  // namespace qsub
