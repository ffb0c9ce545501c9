#pragma once

#include <vector>

#include "core/filter.hpp"

namespace qsub {

// Quasi-stationary scheme: masks a_1..a_r applied cyclically (a_1 first) with dilation M.
template <class T>
struct Scheme {
  std::vector<BasicFilter<T>> masks;
  int dilation = 2;

  int dim() const { return masks.front().dim(); }
  int period() const { return static_cast<int>(masks.size()); }
};

template <class T>
Scheme<T> make_scheme(std::vector<BasicFilter<T>> masks, int M, bool require_normalized = true) {
  require_dilation(M);
  if (masks.empty()) fail(ErrorCode::invalid_argument, "scheme needs at least one mask");
  for (std::size_t l = 0; l < masks.size(); ++l) {
    detail::check_same_dim(masks[0].dim(), masks[l].dim(), "scheme");
    if (!require_normalized) continue;
    T s = value_sum(masks[l]);
    if (!Scalar<T>::near(s, T(1), 1e-12))
      fail(ErrorCode::invalid_argument, "mask " + std::to_string(l + 1) + " does not sum to 1");
  }
  return Scheme<T>{std::move(masks), M};
}

template <class T>
Scheme<double> to_float(const Scheme<T>& s) {
  Scheme<double> out;
  out.dilation = s.dilation;
  for (const auto& a : s.masks) out.masks.push_back(to_float(a));
  return out;
}

// (S_{a,M} v)(k) = M^d sum_n v(n) a(k - M n)
template <class T>
BasicFilter<T> subdivide(const BasicFilter<T>& a, int M, const BasicFilter<T>& v) {
  require_dilation(M);
  detail::check_same_dim(a.dim(), v.dim(), "subdivide");
  T md = Scalar<T>::from_rational(rational_power(M, a.dim()));
  return detail::scaled_convolve(v, M, a, md);
}

template <class T>
BasicFilter<T> subdivide_n(const BasicFilter<T>& a, int M, int n, BasicFilter<T> v) {
  if (n < 0) fail(ErrorCode::invalid_argument, "level must be >= 0");
  for (int i = 0; i < n; ++i) v = subdivide(a, M, v);
  return v;
}

// S^{n,r} v: the first n masks of the cycle a_1, a_2, ..., a_r, a_1, ...
template <class T>
BasicFilter<T> quasi_subdivide(const Scheme<T>& s, int n, BasicFilter<T> v) {
  if (n < 0) fail(ErrorCode::invalid_argument, "level must be >= 0");
  for (int i = 0; i < n; ++i) v = subdivide(s.masks[static_cast<std::size_t>(i % s.period())], s.dilation, v);
  return v;
}

// a = conv_l upsample(a_l, M^{r-l}); the dilation of the combined stationary mask is M^r.
template <class T>
BasicFilter<T> combined_mask(const Scheme<T>& s) {
  const int r = s.period();
  BasicFilter<T> a = delta<T>(s.dim());
  long factor = 1;
  for (int l = r - 1; l >= 0; --l) {
    const auto& al = s.masks[static_cast<std::size_t>(l)];
    a = convolve(a, factor == 1 ? al : upsample(al, static_cast<int>(factor)));
    factor *= s.dilation;
  }
  return a;
}

// Same mask via M^{-dr} S_{a_r} ... S_{a_1} delta.
template <class T>
BasicFilter<T> combined_mask_iterated(const Scheme<T>& s) {
  auto v = quasi_subdivide(s, s.period(), delta<T>(s.dim()));
  return scale(v, Scalar<T>::from_rational(rational_power(s.dilation, -s.dim() * s.period())));
}

inline int combined_dilation(int M, int r) {
  long f = 1;
  for (int i = 0; i < r; ++i) f *= M;
  return static_cast<int>(f);
}

// M^{|mu| n} nabla^mu S^{n} v
template <class T>
BasicFilter<T> derivative_sequence(const Scheme<T>& s, const MultiIndex& mu, int n, const BasicFilter<T>& v) {
  if (mu.dim() != s.dim() || !mu.nonnegative()) fail(ErrorCode::invalid_dimension, "derivative order has wrong dimension");
  auto w = axis_difference(quasi_subdivide(s, n, v), mu);
  return scale(w, Scalar<T>::from_rational(rational_power(s.dilation, mu.total() * n)));
}

}  // namespace qsub
