#pragma once

#include <random>
#include <vector>

#include "core/filter.hpp"
#include "core/subdivision.hpp"

namespace qsub::testing {

inline std::mt19937& rng() {
  static std::mt19937 g(20240611u);
  return g;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }
inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// Random small rational filter on a random box inside [-3,3]^d.
inline RationalFilter random_rational(int dim, int max_extent = 3, int density_pct = 70) {
  std::vector<std::pair<MultiIndex, Rational>> e;
  MultiIndex lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    lo[static_cast<std::size_t>(i)] = uniform_int(-3, 1);
    hi[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] + uniform_int(0, max_extent);
  }
  LatticeBox(lo, hi).for_each([&](const MultiIndex& k, std::size_t) {
    if (uniform_int(1, 100) > density_pct) return;
    e.push_back({k, make_rational(uniform_int(-9, 9), uniform_int(1, 7))});
  });
  return RationalFilter::from_entries(dim, e);
}

inline FloatFilter random_float(int dim, int max_extent = 3) {
  std::vector<std::pair<MultiIndex, double>> e;
  MultiIndex lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    lo[static_cast<std::size_t>(i)] = uniform_int(-3, 1);
    hi[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)] + uniform_int(0, max_extent);
  }
  LatticeBox(lo, hi).for_each([&](const MultiIndex& k, std::size_t) { e.push_back({k, uniform_real(-1, 1)}); });
  return FloatFilter::from_entries(dim, e);
}

inline std::vector<double> random_xi(int dim) {
  std::vector<double> xi;
  for (int i = 0; i < dim; ++i) xi.push_back(uniform_real(-3.2, 3.2));
  return xi;
}

// (1 + z)^m along every axis times a random q, scaled to sum 1: sum rules of order >= m for M = 2.
inline RationalFilter random_mask_with_sum_rules(int dim, int m) {
  RationalFilter a = delta<Rational>(dim);
  for (int i = 0; i < dim; ++i) {
    RationalFilter f = delta<Rational>(dim) + monomial<Rational>(unit_vector(dim, i));
    for (int j = 0; j < m; ++j) a = convolve(a, f);
  }
  RationalFilter q;
  do {
    q = random_rational(dim, 2, 80);
  } while (q.empty() || value_sum(q) == 0);
  a = convolve(a, q);
  return scale(a, Rational(1 / value_sum(a)));
}

inline RationalFilter hat1d() {
  return RationalFilter::from_entries(1, {{MultiIndex{-1}, make_rational(1, 4)}, {MultiIndex{0}, make_rational(1, 2)},
                                          {MultiIndex{1}, make_rational(1, 4)}});
}

inline RationalFilter hat2d() {
  RationalFilter h = hat1d();
  std::vector<std::pair<MultiIndex, Rational>> e;
  h.for_each_nonzero([&](const MultiIndex& i, const Rational& x) {
    h.for_each_nonzero([&](const MultiIndex& j, const Rational& y) { e.push_back({MultiIndex{i[0], j[0]}, x * y}); });
  });
  return RationalFilter::from_entries(2, e);
}

// Row-major filter helper: rows listed from the top (largest y), x from x0.
inline RationalFilter matrix_filter(long denom, int x0, int y_top, const std::vector<std::vector<long>>& rows) {
  std::vector<std::pair<MultiIndex, Rational>> e;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      e.push_back({MultiIndex{x0 + static_cast<int>(j), y_top - static_cast<int>(i)}, make_rational(rows[i][j], denom)});
  return RationalFilter::from_entries(2, e);
}

}  // namespace qsub::testing
