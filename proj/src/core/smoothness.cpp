#include "core/smoothness.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qsub {

namespace {

std::size_t coset_index(const MultiIndex& k, long P) {
  std::size_t idx = 0;
  for (int c : k) {
    long r = c % P;
    if (r < 0) r += P;
    idx = idx * static_cast<std::size_t>(P) + static_cast<std::size_t>(r);
  }
  return idx;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t p = 1;
  for (int i = 0; i < e; ++i) p *= b;
  return p;
}

double log_base(double x, int M) { return std::log(x) / std::log(static_cast<double>(M)); }

template <class T>
BasicFilter<T> reflect(const BasicFilter<T>& a) {
  std::vector<std::pair<MultiIndex, T>> e;
  a.for_each_nonzero([&](const MultiIndex& k, const T& v) { e.emplace_back(-k, v); });
  return BasicFilter<T>::from_entries(a.dim(), e);
}

struct Transition {
  Eigen::MatrixXd T;
  std::vector<MultiIndex> K;
  int radius = 0;
};

// T(j,k) = w(M j - k) on K = [-R,R]^d, w = M^d a * a(-.)
Transition transition_matrix(const FloatFilter& a, int M) {
  const int d = a.dim();
  FloatFilter w = scale(convolve(a, reflect(a)), std::pow(static_cast<double>(M), d));
  int N = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i)
    N = std::max({N, std::abs(w.box().lo()[i]), std::abs(w.box().hi()[i])});
  Transition t;
  t.radius = N / (M - 1);
  LatticeBox kbox(MultiIndex(static_cast<std::size_t>(d), -t.radius), MultiIndex(static_cast<std::size_t>(d), t.radius));
  kbox.for_each([&](const MultiIndex& k, std::size_t) { t.K.push_back(k); });
  const auto n = static_cast<Eigen::Index>(t.K.size());
  t.T = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      t.T(j, k) = w(M * t.K[static_cast<std::size_t>(j)] - t.K[static_cast<std::size_t>(k)]);
  return t;
}

double spectral_radius(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "eigenvalue iteration did not converge");
  double r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
  return r;
}

}  // namespace

template <class T>
int sum_rule_order(const BasicFilter<T>& a, int M, std::optional<int> max_m) {
  require_dilation(M);
  const int d = a.dim();
  int width = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) width = std::max(width, a.box().extent(i));
  const int cap = max_m.value_or(2 * width);
  if (cap < 0) fail(ErrorCode::invalid_argument, "sum rule cap must be >= 0");
  const std::size_t ncos = ipow(static_cast<std::size_t>(M), d);
  const T inv = Scalar<T>::from_rational(rational_power(M, -d));
  for (int ord = 0; ord < cap; ++ord) {
    for (const auto& mu : exponents_of_order(d, ord)) {
      std::vector<T> cs(ncos, T(0));
      T total(0);
      double mass = 0;
      a.for_each_nonzero([&](const MultiIndex& k, const T& v) {
        T x = v * monomial_value<T>(k, mu);
        mass += std::fabs(Scalar<T>::to_double(x));
        total += x;
        cs[coset_index(k, M)] += x;
      });
      T target = total * inv;
      const double tol = 1e-10 * std::max(1.0, mass);
      for (const auto& c : cs)
        if (!Scalar<T>::near(c, target, tol)) return ord;
    }
  }
  return cap;
}

template <class T>
bool is_interpolatory(const BasicFilter<T>& a, int M, double tol) {
  require_dilation(M);
  auto c0 = coset_extract(a, MultiIndex(static_cast<std::size_t>(a.dim()), 0), M);
  auto target = scale(delta<T>(a.dim()), Scalar<T>::from_rational(rational_power(M, -a.dim())));
  if constexpr (std::is_same_v<T, Rational>) {
    (void)tol;
    return c0 == target;
  } else {
    return max_abs(c0 - target) <= tol;
  }
}

std::vector<DifferenceSpec> required_difference_specs(const std::string& group, int m, int dim) {
  if (m < 1) fail(ErrorCode::invalid_argument, "difference order must be >= 1");
  const MultiIndex e1 = unit_vector(dim, 0);
  if (dim == 2) {
    const MultiIndex e2 = unit_vector(2, 1);
    if (group == "d4" && m == 2) return {{{e1, 2}}, {{e1, 1}, {e2, 1}}};
    if (group == "d6" && m == 2) return {{{e1, 1}, {e2, 1}}};
    if (group == "d4" && m == 4) return {{{e1, 4}}, {{e1, 2}, {e2, 1}}};
    if (group == "d6" && m == 4) return {{{e1, 2}, {e2, 1}}};
  }
  std::vector<DifferenceSpec> out;
  for (const auto& mu : exponents_of_order(dim, m)) {
    DifferenceSpec s;
    for (int j = 0; j < dim; ++j)
      if (mu[static_cast<std::size_t>(j)] > 0) s.push_back({unit_vector(dim, j), mu[static_cast<std::size_t>(j)]});
    out.push_back(s);
  }
  return out;
}

template <class T>
BasicFilter<T> divided_mask(const BasicFilter<T>& a, int M, const DifferenceSpec& spec) {
  BasicFilter<T> b = a;
  for (const auto& f : spec) b = laurent_divide_exact(b, f.direction, M, f.order);
  if (b.empty()) return b;
  return shift(b, -b.box().lo());
}

template <class T>
double rho_upper(const BasicFilter<T>& b, int M, int n) {
  require_dilation(M);
  if (n < 1) fail(ErrorCode::invalid_argument, "level must be >= 1");
  auto v = subdivide_n(b, M, n, delta<T>(b.dim()));
  long P = 1;
  for (int i = 0; i < n; ++i) P *= M;
  const std::size_t ncos = ipow(static_cast<std::size_t>(P), b.dim());
  if (ncos > kMaxBoxPoints) fail(ErrorCode::level_too_large, "too many cosets at this level");
  std::vector<T> sums(ncos, T(0));
  v.for_each_nonzero([&](const MultiIndex& k, const T& x) { sums[coset_index(k, P)] += Scalar<T>::abs(x); });
  T best(0);
  for (const auto& s : sums)
    if (s > best) best = s;
  return std::pow(Scalar<T>::to_double(best), 1.0 / n);
}

template <class T>
SmInfBound sm_inf_lower(const BasicFilter<T>& a, int M, const std::vector<DifferenceSpec>& specs, int n) {
  if (specs.empty()) fail(ErrorCode::invalid_argument, "no difference specs given");
  SmInfBound out;
  out.level = n;
  out.specs = specs;
  double worst = 0;
  for (const auto& s : specs) {
    double r = rho_upper(divided_mask(a, M, s), M, n);
    out.rho.push_back(r);
    worst = std::max(worst, r);
  }
  out.value = worst > 0 ? -log_base(worst, M) : INFINITY;
  return out;
}

template <class T>
Sm2Result sm2(const BasicFilter<T>& a_in, int M, std::optional<int> sum_rules) {
  require_dilation(M);
  if (a_in.empty()) fail(ErrorCode::invalid_argument, "zero mask");
  const int d = a_in.dim();
  Sm2Result res;
  res.sum_rules = sum_rules.value_or(sum_rule_order(a_in, M));
  FloatFilter a = to_float(a_in);
  Transition t = transition_matrix(a, M);
  const auto n = static_cast<Eigen::Index>(t.K.size());
  res.matrix_size = static_cast<int>(n);

  auto nus = exponents_below(d, 2 * res.sum_rules);
  Eigen::MatrixXd Q;
  if (nus.empty()) {
    Q = Eigen::MatrixXd::Identity(n, n);
  } else {
    // Columns: moment functionals on K, coordinates scaled to [-1,1] for conditioning.
    const double R = std::max(1, t.radius);
    Eigen::MatrixXd Ct(n, static_cast<Eigen::Index>(nus.size()));
    for (Eigen::Index i = 0; i < n; ++i)
      for (std::size_t c = 0; c < nus.size(); ++c) {
        double p = 1;
        for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j)
          p *= std::pow(t.K[static_cast<std::size_t>(i)][j] / R, nus[c][j]);
        Ct(i, static_cast<Eigen::Index>(c)) = p;
      }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Ct);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    Eigen::MatrixXd full = qr.householderQ();
    Q = full.rightCols(n - rank);
  }
  res.subspace_dim = static_cast<int>(Q.cols());
  Eigen::MatrixXd TV = Q.transpose() * t.T * Q;
  res.spectral_radius = spectral_radius(TV);
  res.value = res.spectral_radius > 0 ? -0.5 * log_base(res.spectral_radius, M) : INFINITY;
  return res;
}

template <class T>
double sm2_by_eigenvalue_removal(const BasicFilter<T>& a_in, int M) {
  const int d = a_in.dim();
  const int m = sum_rule_order(a_in, M);
  Transition t = transition_matrix(to_float(a_in), M);
  Eigen::EigenSolver<Eigen::MatrixXd> es(t.T, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "eigenvalue iteration did not converge");
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  for (int j = 0; j < 2 * m; ++j) {
    const double target = std::pow(static_cast<double>(M), -j);
    const std::size_t mult = exponents_of_order(d, j).size();
    for (std::size_t r = 0; r < mult && !ev.empty(); ++r) {
      auto it = std::min_element(ev.begin(), ev.end(), [&](auto x, auto y) {
        return std::abs(x - target) < std::abs(y - target);
      });
      ev.erase(it);
    }
  }
  double rho = 0;
  for (auto z : ev) rho = std::max(rho, std::abs(z));
  return rho > 0 ? -0.5 * log_base(rho, M) : INFINITY;
}

template <class T>
double sm2_iterative_estimate(const BasicFilter<T>& a_in, int M, int n, const std::vector<MultiIndex>& mus,
                              EstimateKind kind) {
  if (n < 1 || (kind == EstimateKind::ratio && n < 2)) fail(ErrorCode::invalid_argument, "level too small");
  if (mus.empty()) fail(ErrorCode::invalid_argument, "no difference orders given");
  FloatFilter a = to_float(a_in);
  FloatFilter v = delta<double>(a.dim());
  std::vector<double> prev(mus.size(), 0), cur(mus.size(), 0);
  for (int level = 1; level <= n; ++level) {
    v = subdivide(a, M, v);
    if (level < n - 1) continue;
    for (std::size_t i = 0; i < mus.size(); ++i) (level == n ? cur : prev)[i] = l2_norm(axis_difference(v, mus[i]));
  }
  double r = 0;
  for (std::size_t i = 0; i < mus.size(); ++i)
    r = std::max(r, kind == EstimateKind::root ? std::pow(cur[i], 1.0 / n) : cur[i] / prev[i]);
  return a.dim() / 2.0 - log_base(r, M);
}

#define QSUB_INSTANTIATE(T)                                                                                 \
  template int sum_rule_order<T>(const BasicFilter<T>&, int, std::optional<int>);                        \
  template bool is_interpolatory<T>(const BasicFilter<T>&, int, double);                                 \
  template BasicFilter<T> divided_mask<T>(const BasicFilter<T>&, int, const DifferenceSpec&);            \
  template double rho_upper<T>(const BasicFilter<T>&, int, int);                                         \
  template SmInfBound sm_inf_lower<T>(const BasicFilter<T>&, int, const std::vector<DifferenceSpec>&, int); \
  template Sm2Result sm2<T>(const BasicFilter<T>&, int, std::optional<int>);                             \
  template double sm2_by_eigenvalue_removal<T>(const BasicFilter<T>&, int);                              \
  template double sm2_iterative_estimate<T>(const BasicFilter<T>&, int, int, const std::vector<MultiIndex>&, \
                                            EstimateKind);

QSUB_INSTANTIATE(Rational)
QSUB_INSTANTIATE(double)

}  // namespace qsub
