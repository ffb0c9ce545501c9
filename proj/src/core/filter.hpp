#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/multi_index.hpp"
#include "core/rational.hpp"

namespace qsub {

inline constexpr std::size_t kMaxBoxPoints = 100'000'000;

inline int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline void require_dilation(int M) {
  if (M < 2) fail(ErrorCode::invalid_dilation, "dilation factor must be >= 2, got " + std::to_string(M));
}

// Axis-aligned box [lo, hi] in Z^d with row-major linear addressing (last coordinate fastest).
class LatticeBox {
 public:
  LatticeBox() = default;
  LatticeBox(MultiIndex lo, MultiIndex hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) fail(ErrorCode::invalid_dimension, "box corners differ in dimension");
    empty_ = false;
    for (std::size_t i = 0; i < lo_.size(); ++i)
      if (hi_[i] < lo_[i]) empty_ = true;
    stride_.assign(lo_.size(), 0);
    if (empty_) return;
    long double vol = 1;
    for (std::size_t i = lo_.size(); i-- > 0;) {
      stride_[i] = static_cast<std::size_t>(vol);
      vol *= static_cast<long double>(hi_[i] - lo_[i] + 1);
      if (vol > static_cast<long double>(kMaxBoxPoints))
        fail(ErrorCode::level_too_large, "support box exceeds " + std::to_string(kMaxBoxPoints) + " points");
    }
    volume_ = static_cast<std::size_t>(vol);
  }

  static LatticeBox empty_box(int dim) {
    return LatticeBox(MultiIndex(static_cast<std::size_t>(dim), 0), MultiIndex(static_cast<std::size_t>(dim), -1));
  }

  int dim() const { return lo_.dim(); }
  bool empty() const { return empty_; }
  const MultiIndex& lo() const { return lo_; }
  const MultiIndex& hi() const { return hi_; }
  std::size_t volume() const { return volume_; }
  int extent(std::size_t i) const { return empty_ ? 0 : hi_[i] - lo_[i] + 1; }
  const std::vector<std::size_t>& strides() const { return stride_; }

  bool contains(const MultiIndex& k) const {
    if (empty_ || k.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] < lo_[i] || k[i] > hi_[i]) return false;
    return true;
  }
  std::size_t offset(const MultiIndex& k) const {
    std::size_t o = 0;
    for (std::size_t i = 0; i < k.size(); ++i) o += static_cast<std::size_t>(k[i] - lo_[i]) * stride_[i];
    return o;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (empty_) return;
    MultiIndex k = lo_;
    const std::size_t d = k.size();
    for (std::size_t o = 0; o < volume_; ++o) {
      fn(static_cast<const MultiIndex&>(k), o);
      for (std::size_t i = d; i-- > 0;) {
        if (k[i] < hi_[i]) {
          ++k[i];
          break;
        }
        k[i] = lo_[i];
      }
    }
  }

  LatticeBox hull(const LatticeBox& o) const {
    if (empty_) return o;
    if (o.empty_) return *this;
    MultiIndex lo = lo_, hi = hi_;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], o.lo_[i]);
      hi[i] = std::max(hi[i], o.hi_[i]);
    }
    return LatticeBox(lo, hi);
  }

  friend bool operator==(const LatticeBox& a, const LatticeBox& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_ && a.dim() == b.dim();
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  MultiIndex lo_, hi_;
  std::vector<std::size_t> stride_;
  std::size_t volume_ = 0;
  bool empty_ = true;
};

// Finitely supported sequence Z^d -> T, stored densely over the tight bounding box of its
// nonzero entries. Immutable value type.
template <class T>
class BasicFilter {
 public:
  using value_type = T;

  explicit BasicFilter(int dim = 1) : dim_(dim), box_(LatticeBox::empty_box(dim)) {
    if (dim < 1) fail(ErrorCode::invalid_dimension, "filter dimension must be >= 1");
  }

  BasicFilter(const LatticeBox& box, std::vector<T> values) : dim_(box.dim()), box_(box), values_(std::move(values)) {
    if (dim_ < 1) fail(ErrorCode::invalid_dimension, "filter dimension must be >= 1");
    if (values_.size() != box_.volume()) fail(ErrorCode::invalid_argument, "value count does not match box");
    trim();
  }

  static BasicFilter from_entries(int dim, const std::vector<std::pair<MultiIndex, T>>& entries) {
    if (entries.empty()) return BasicFilter(dim);
    MultiIndex lo = entries.front().first, hi = lo;
    for (const auto& [k, v] : entries) {
      if (k.dim() != dim) fail(ErrorCode::invalid_dimension, "entry " + to_string(k) + " has wrong dimension");
      for (std::size_t i = 0; i < k.size(); ++i) {
        lo[i] = std::min(lo[i], k[i]);
        hi[i] = std::max(hi[i], k[i]);
      }
    }
    LatticeBox box(lo, hi);
    std::vector<T> vals(box.volume(), T(0));
    for (const auto& [k, v] : entries) vals[box.offset(k)] += v;
    return BasicFilter(box, std::move(vals));
  }

  int dim() const { return dim_; }
  bool empty() const { return box_.empty(); }
  const LatticeBox& box() const { return box_; }
  const std::vector<T>& values() const { return values_; }

  T operator()(const MultiIndex& k) const {
    if (!box_.contains(k)) return T(0);
    return values_[box_.offset(k)];
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& v : values_)
      if (!Scalar<T>::is_zero(v)) ++n;
    return n;
  }

  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    box_.for_each([&](const MultiIndex& k, std::size_t o) {
      if (!Scalar<T>::is_zero(values_[o])) fn(k, values_[o]);
    });
  }

  friend bool operator==(const BasicFilter& a, const BasicFilter& b) {
    return a.dim_ == b.dim_ && a.box_ == b.box_ && (a.empty() || a.values_ == b.values_);
  }

 private:
  void trim() {
    if (box_.empty()) {
      values_.clear();
      return;
    }
    const std::size_t d = static_cast<std::size_t>(dim_);
    MultiIndex lo(d, 0), hi(d, 0);
    bool any = false;
    box_.for_each([&](const MultiIndex& k, std::size_t o) {
      if (Scalar<T>::is_zero(values_[o])) return;
      if (!any) {
        lo = k;
        hi = k;
        any = true;
        return;
      }
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], k[i]);
        hi[i] = std::max(hi[i], k[i]);
      }
    });
    if (!any) {
      box_ = LatticeBox::empty_box(dim_);
      values_.clear();
      return;
    }
    if (lo == box_.lo() && hi == box_.hi()) return;
    LatticeBox tight(lo, hi);
    std::vector<T> v(tight.volume());
    tight.for_each([&](const MultiIndex& k, std::size_t o) { v[o] = values_[box_.offset(k)]; });
    box_ = tight;
    values_ = std::move(v);
  }

  int dim_;
  LatticeBox box_;
  std::vector<T> values_;
};

using RationalFilter = BasicFilter<Rational>;
using FloatFilter = BasicFilter<double>;

// One factor nabla_h^order of a difference operator.
struct DifferenceFactor {
  MultiIndex direction;
  int order = 0;
};
using DifferenceSpec = std::vector<DifferenceFactor>;

std::string to_string(const DifferenceSpec& spec);

namespace detail {

template <class T>
struct SparseEntry {
  std::ptrdiff_t offset;
  T value;
};

// Nonzero entries of u at positions scale*k (+ 0), with offsets in the strides of `target`
// relative to target.lo() - base.
template <class T>
std::vector<SparseEntry<T>> sparse_offsets(const BasicFilter<T>& u, int scale, const LatticeBox& target,
                                           const MultiIndex& base) {
  std::vector<SparseEntry<T>> out;
  out.reserve(u.nonzero_count());
  const auto& st = target.strides();
  u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
    std::ptrdiff_t o = 0;
    for (std::size_t i = 0; i < k.size(); ++i)
      o += static_cast<std::ptrdiff_t>(scale * k[i] - base[i]) * static_cast<std::ptrdiff_t>(st[i]);
    out.push_back({o, v});
  });
  return out;
}

inline void check_same_dim(int a, int b, const char* op) {
  if (a != b)
    fail(ErrorCode::incompatible_operands, std::string(op) + ": dimensions " + std::to_string(a) + " and " +
                                              std::to_string(b) + " differ");
}

// result(scale_u * p + q) += c * u(p) v(q).
template <class T>
BasicFilter<T> scaled_convolve(const BasicFilter<T>& u, int scale_u, const BasicFilter<T>& v, const T& c) {
  check_same_dim(u.dim(), v.dim(), "convolve");
  if (u.empty() || v.empty()) return BasicFilter<T>(u.dim());
  MultiIndex lo = scale_u * u.box().lo() + v.box().lo();
  MultiIndex hi = scale_u * u.box().hi() + v.box().hi();
  LatticeBox box(lo, hi);
  auto su = sparse_offsets(u, scale_u, box, scale_u * u.box().lo());
  auto sv = sparse_offsets(v, 1, box, v.box().lo());
  std::vector<T> out(box.volume(), T(0));
  if constexpr (std::is_same_v<T, double>) {
    for (const auto& a : su) {
      const double av = a.value * c;
      double* base = out.data() + a.offset;
      for (const auto& b : sv) base[b.offset] += av * b.value;
    }
  } else {
    T av, tmp;
    for (const auto& a : su) {
      av = a.value * c;
      for (const auto& b : sv) {
        tmp = av * b.value;
        out[static_cast<std::size_t>(a.offset + b.offset)] += tmp;
      }
    }
  }
  return BasicFilter<T>(box, std::move(out));
}

template <class T>
BasicFilter<T> combine(const BasicFilter<T>& a, const BasicFilter<T>& b, const T& cb) {
  check_same_dim(a.dim(), b.dim(), "add");
  if (a.empty() && b.empty()) return a;
  LatticeBox box = a.box().hull(b.box());
  std::vector<T> out(box.volume(), T(0));
  a.for_each_nonzero([&](const MultiIndex& k, const T& v) { out[box.offset(k)] += v; });
  b.for_each_nonzero([&](const MultiIndex& k, const T& v) { out[box.offset(k)] += cb * v; });
  return BasicFilter<T>(box, std::move(out));
}

}  // namespace detail

template <class T>
BasicFilter<T> delta(int dim) {
  return BasicFilter<T>::from_entries(dim, {{MultiIndex(static_cast<std::size_t>(dim), 0), T(1)}});
}

template <class T>
BasicFilter<T> monomial(const MultiIndex& k, const T& value = T(1)) {
  return BasicFilter<T>::from_entries(k.dim(), {{k, value}});
}

template <class T>
BasicFilter<T> shift(const BasicFilter<T>& u, const MultiIndex& s) {
  detail::check_same_dim(u.dim(), s.dim(), "shift");
  if (u.empty()) return u;
  return BasicFilter<T>(LatticeBox(u.box().lo() + s, u.box().hi() + s), u.values());
}

template <class T>
BasicFilter<T> scale(const BasicFilter<T>& u, const T& c) {
  if (u.empty()) return u;
  std::vector<T> v = u.values();
  for (auto& x : v) x *= c;
  return BasicFilter<T>(u.box(), std::move(v));
}

template <class T>
BasicFilter<T> operator+(const BasicFilter<T>& a, const BasicFilter<T>& b) {
  return detail::combine(a, b, T(1));
}

template <class T>
BasicFilter<T> operator-(const BasicFilter<T>& a, const BasicFilter<T>& b) {
  return detail::combine(a, b, T(-1));
}

template <class T>
BasicFilter<T> convolve(const BasicFilter<T>& u, const BasicFilter<T>& v) {
  return detail::scaled_convolve(u, 1, v, T(1));
}

// u_up(M k) = u(k), zero off M Z^d.
template <class T>
BasicFilter<T> upsample(const BasicFilter<T>& u, int M) {
  require_dilation(M);
  if (u.empty()) return u;
  return detail::scaled_convolve(u, M, delta<T>(u.dim()), T(1));
}

template <class T>
T value_sum(const BasicFilter<T>& u) {
  T s(0);
  for (const auto& v : u.values()) s += v;
  return s;
}

template <class T>
double l1_norm(const BasicFilter<T>& u) {
  if constexpr (std::is_same_v<T, double>) {
    double s = 0;
    for (double v : u.values()) s += std::fabs(v);
    return s;
  } else {
    T s(0);
    for (const auto& v : u.values()) s += Scalar<T>::abs(v);
    return Scalar<T>::to_double(s);
  }
}

template <class T>
double l2_norm(const BasicFilter<T>& u) {
  long double s = 0;
  for (const auto& v : u.values()) {
    long double x = Scalar<T>::to_double(v);
    s += x * x;
  }
  return static_cast<double>(std::sqrt(s));
}

template <class T>
double max_abs(const BasicFilter<T>& u) {
  double m = 0;
  for (const auto& v : u.values()) m = std::max(m, std::fabs(Scalar<T>::to_double(v)));
  return m;
}

// Symbol sum_k u(k) exp(-i k.xi).
template <class T>
std::complex<double> fourier_eval(const BasicFilter<T>& u, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != u.dim()) fail(ErrorCode::invalid_dimension, "frequency has wrong dimension");
  std::complex<double> s = 0;
  u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
    double ang = 0;
    for (std::size_t i = 0; i < k.size(); ++i) ang -= k[i] * xi[i];
    s += Scalar<T>::to_double(v) * std::polar(1.0, ang);
  });
  return s;
}

// d^alpha of the symbol: sum_k u(k) (-i k)^alpha exp(-i k.xi).
template <class T>
std::complex<double> fourier_derivative(const BasicFilter<T>& u, const MultiIndex& alpha, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != u.dim() || alpha.dim() != u.dim())
    fail(ErrorCode::invalid_dimension, "frequency or order has wrong dimension");
  const std::complex<double> mi(0.0, -1.0);
  std::complex<double> factor = std::pow(mi, alpha.total());
  std::complex<double> s = 0;
  u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
    double ang = 0, mono = 1;
    for (std::size_t i = 0; i < k.size(); ++i) {
      ang -= k[i] * xi[i];
      mono *= std::pow(static_cast<double>(k[i]), alpha[i]);
    }
    s += Scalar<T>::to_double(v) * mono * std::polar(1.0, ang);
  });
  return factor * s;
}

template <class T>
T monomial_value(const MultiIndex& k, const MultiIndex& mu) {
  if constexpr (std::is_same_v<T, double>) {
    double p = 1;
    for (std::size_t i = 0; i < k.size(); ++i)
      for (int e = 0; e < mu[i]; ++e) p *= k[i];
    return p;
  } else {
    mpz_class p = 1;
    for (std::size_t i = 0; i < k.size(); ++i) {
      mpz_class f;
      mpz_pow_ui(f.get_mpz_t(), mpz_class(k[i]).get_mpz_t(), static_cast<unsigned long>(mu[i]));
      p *= f;
    }
    return T(p);
  }
}

// sum_k k^mu u(k)
template <class T>
T moment(const BasicFilter<T>& u, const MultiIndex& mu) {
  if (mu.dim() != u.dim() || !mu.nonnegative()) fail(ErrorCode::invalid_dimension, "bad moment exponent");
  T s(0);
  u.for_each_nonzero([&](const MultiIndex& k, const T& v) { s += v * monomial_value<T>(k, mu); });
  return s;
}

inline void require_coset(const MultiIndex& gamma, int M) {
  for (int g : gamma)
    if (g < 0 || g >= M) fail(ErrorCode::invalid_coset, "coset index " + to_string(gamma) + " not in [0,M-1]^d");
}

// u^[gamma](k) = u(gamma + M k)
template <class T>
BasicFilter<T> coset_extract(const BasicFilter<T>& u, const MultiIndex& gamma, int M) {
  require_dilation(M);
  detail::check_same_dim(u.dim(), gamma.dim(), "coset_extract");
  require_coset(gamma, M);
  if (u.empty()) return u;
  const std::size_t d = static_cast<std::size_t>(u.dim());
  MultiIndex lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = -floor_div(-(u.box().lo()[i] - gamma[i]), M);  // ceil
    hi[i] = floor_div(u.box().hi()[i] - gamma[i], M);
  }
  LatticeBox box(lo, hi);
  if (box.empty()) return BasicFilter<T>(u.dim());
  std::vector<T> out(box.volume());
  box.for_each([&](const MultiIndex& k, std::size_t o) { out[o] = u(gamma + M * k); });
  return BasicFilter<T>(box, std::move(out));
}

template <class T>
BasicFilter<T> coset_reconstruct(const std::map<MultiIndex, BasicFilter<T>>& cosets, int M) {
  require_dilation(M);
  if (cosets.empty()) fail(ErrorCode::invalid_coset_family, "no cosets given");
  const int d = cosets.begin()->first.dim();
  auto reps = coset_representatives(d, M);
  if (cosets.size() != reps.size()) fail(ErrorCode::invalid_coset_family, "coset family must cover Gamma_M exactly");
  BasicFilter<T> out(d);
  for (const auto& g : reps) {
    auto it = cosets.find(g);
    if (it == cosets.end()) fail(ErrorCode::invalid_coset_family, "missing coset " + to_string(g));
    detail::check_same_dim(d, it->second.dim(), "coset_reconstruct");
    out = out + shift(upsample(it->second, M), g);
  }
  return out;
}

// prod_j (delta - delta_{h_j})^{kappa_j}
template <class T>
BasicFilter<T> difference_operator(int dim, const DifferenceSpec& spec) {
  BasicFilter<T> op = delta<T>(dim);
  for (const auto& f : spec) {
    if (f.direction.dim() != dim) fail(ErrorCode::invalid_dimension, "difference direction has wrong dimension");
    if (f.direction.is_zero()) fail(ErrorCode::invalid_direction, "difference direction must be nonzero");
    if (f.order < 0) fail(ErrorCode::invalid_argument, "difference order must be >= 0");
    auto step = delta<T>(dim) - monomial<T>(f.direction);
    for (int i = 0; i < f.order; ++i) op = convolve(op, step);
  }
  return op;
}

template <class T>
BasicFilter<T> difference(const BasicFilter<T>& u, const DifferenceSpec& spec) {
  return convolve(difference_operator<T>(u.dim(), spec), u);
}

// nabla^mu u with mu in N_0^d along the coordinate axes.
template <class T>
BasicFilter<T> axis_difference(const BasicFilter<T>& u, const MultiIndex& mu) {
  DifferenceSpec spec;
  for (int j = 0; j < u.dim(); ++j)
    if (mu[static_cast<std::size_t>(j)] > 0) spec.push_back({unit_vector(u.dim(), j), mu[static_cast<std::size_t>(j)]});
  return difference(u, spec);
}

// Coefficients of (1 + x + ... + x^{M-1})^kappa.
inline std::vector<long long> block_sum_power(int M, int kappa) {
  std::vector<long long> p{1};
  for (int r = 0; r < kappa; ++r) {
    std::vector<long long> q(p.size() + static_cast<std::size_t>(M) - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int t = 0; t < M; ++t) q[i + static_cast<std::size_t>(t)] += p[i];
    p = std::move(q);
  }
  return p;
}

// Exact b with u^ = (sum_{t<M} e^{-i t h.xi})^kappa b^. Works line by line along h.
template <class T>
BasicFilter<T> laurent_divide_exact(const BasicFilter<T>& u, const MultiIndex& h, int M, int kappa) {
  require_dilation(M);
  detail::check_same_dim(u.dim(), h.dim(), "laurent_divide_exact");
  if (h.is_zero()) fail(ErrorCode::invalid_direction, "division direction must be nonzero");
  if (kappa < 0) fail(ErrorCode::invalid_argument, "division order must be >= 0");
  if (kappa == 0 || u.empty()) return u;

  long hh = 0;
  for (int c : h) hh += static_cast<long>(c) * c;
  std::map<MultiIndex, std::map<long, T>> lines;
  u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
    long dot = 0;
    for (std::size_t i = 0; i < k.size(); ++i) dot += static_cast<long>(k[i]) * h[i];
    long s = dot >= 0 ? dot / hh : -((-dot + hh - 1) / hh);
    MultiIndex key = k - static_cast<int>(s) * h;
    lines[key][s] = v;
  });

  const auto div = block_sum_power(M, kappa);
  const std::size_t deg = div.size() - 1;
  std::vector<std::pair<MultiIndex, T>> out;
  double remainder = 0;
  for (const auto& [key, line] : lines) {
    const long s0 = line.begin()->first;
    const std::size_t len = static_cast<std::size_t>(line.rbegin()->first - s0 + 1);
    std::vector<T> c(len, T(0));
    for (const auto& [s, v] : line) c[static_cast<std::size_t>(s - s0)] = v;
    if (len <= deg) {
      if constexpr (std::is_same_v<T, double>) {
        for (const auto& v : c) remainder += std::fabs(v);
        continue;
      } else {
        fail(ErrorCode::not_divisible, "sequence is not divisible along " + to_string(h));
      }
    }
    const std::size_t qlen = len - deg;
    std::vector<T> q(qlen, T(0));
    for (std::size_t j = 0; j < qlen; ++j) {
      T acc = c[j];
      for (std::size_t i = 1; i <= std::min(j, deg); ++i) acc -= T(static_cast<long>(div[i])) * q[j - i];
      q[j] = acc;
    }
    for (std::size_t j = qlen; j < len; ++j) {
      T acc = c[j];
      for (std::size_t i = j - qlen + 1; i <= std::min(j, deg); ++i) acc -= T(static_cast<long>(div[i])) * q[j - i];
      if constexpr (std::is_same_v<T, double>) {
        remainder += std::fabs(acc);
      } else if (!Scalar<T>::is_zero(acc)) {
        fail(ErrorCode::not_divisible, "sequence is not divisible along " + to_string(h));
      }
    }
    for (std::size_t j = 0; j < qlen; ++j)
      if (!Scalar<T>::is_zero(q[j])) out.emplace_back(key + static_cast<int>(s0 + static_cast<long>(j)) * h, q[j]);
  }
  if constexpr (std::is_same_v<T, double>) {
    if (remainder > 1e-9 * l1_norm(u))
      fail(ErrorCode::not_divisible, "sequence is not divisible along " + to_string(h) +
                                         " (remainder " + format_double(remainder) + ")");
  }
  return BasicFilter<T>::from_entries(u.dim(), out);
}

inline FloatFilter to_float(const RationalFilter& u) {
  if (u.empty()) return FloatFilter(u.dim());
  std::vector<double> v(u.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = u.values()[i].get_d();
  return FloatFilter(u.box(), std::move(v));
}

inline FloatFilter to_float(const FloatFilter& u) { return u; }

// Drop entries below rel_tol * max|u|. Never applied implicitly.
inline FloatFilter normalized(const FloatFilter& u, double rel_tol = 1e-14) {
  const double cut = rel_tol * max_abs(u);
  std::vector<double> v = u.values();
  for (auto& x : v)
    if (std::fabs(x) < cut) x = 0.0;
  return u.empty() ? u : FloatFilter(u.box(), std::move(v));
}

template <class T>
bool nearly_equal(const BasicFilter<T>& a, const BasicFilter<T>& b, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)tol;
    return a == b;
  } else {
    if (a.dim() != b.dim()) return false;
    return max_abs(a - b) <= tol;
  }
}

}  // namespace qsub
