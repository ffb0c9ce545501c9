#include "core/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <set>

#include "core/subdivision.hpp"

namespace qsub {

LatticeBox residual_window(const MaskFamily& f) {
  Rational c = f.dilation;
  for (int j = 1; j < f.period(); ++j) c += rational_power(f.dilation, -j);
  c *= f.ring;
  mpz_class w;
  mpz_fdiv_q(w.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
  const int wi = static_cast<int>(w.get_si());
  return LatticeBox(MultiIndex(static_cast<std::size_t>(f.dim), -wi), MultiIndex(static_cast<std::size_t>(f.dim), wi));
}

namespace {

template <class T>
std::vector<T> sample_residual(const BasicFilter<T>& a, const LatticeBox& win, int MR, const T& target0) {
  std::vector<T> r(win.volume());
  win.for_each([&](const MultiIndex& k, std::size_t o) {
    r[o] = a(MR * k);
    if (k.is_zero()) r[o] -= target0;
  });
  return r;
}

struct Problem {
  const MaskFamily& f;
  std::vector<std::string> vars;
  Eigen::MatrixXd A;  // params = A x + c
  Eigen::VectorXd c;
  LatticeBox win;
  int MR;
  std::vector<std::vector<FloatFilter>> coeff;  // float copies
  std::vector<FloatFilter> base;

  Eigen::VectorXd params(const Eigen::VectorXd& x) const { return A * x + c; }

  std::vector<FloatFilter> masks(const Eigen::VectorXd& p) const {
    std::vector<FloatFilter> out;
    for (std::size_t l = 0; l < base.size(); ++l) {
      FloatFilter a = base[l];
      for (std::size_t j = 0; j < coeff[l].size(); ++j)
        if (!coeff[l][j].empty() && p(static_cast<Eigen::Index>(j)) != 0.0)
          a = a + scale(coeff[l][j], p(static_cast<Eigen::Index>(j)));
      out.push_back(std::move(a));
    }
    return out;
  }

  // Upsampled factors U_l of the combined mask.
  std::vector<FloatFilter> factors(const std::vector<FloatFilter>& m) const {
    std::vector<FloatFilter> u;
    int factor = 1;
    for (int l = static_cast<int>(m.size()) - 1; l >= 0; --l) {
      u.insert(u.begin(), factor == 1 ? m[static_cast<std::size_t>(l)] : upsample(m[static_cast<std::size_t>(l)], factor));
      factor *= f.dilation;
    }
    return u;
  }
  int factor_of(std::size_t l) const { return combined_dilation(f.dilation, static_cast<int>(base.size() - 1 - l)); }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
    auto u = factors(masks(params(x)));
    FloatFilter a = u[0];
    for (std::size_t l = 1; l < u.size(); ++l) a = convolve(a, u[l]);
    auto r = sample_residual(a, win, MR, std::pow(static_cast<double>(MR), -f.dim));
    return Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    auto u = factors(masks(params(x)));
    const auto np = static_cast<Eigen::Index>(f.params.size());
    Eigen::MatrixXd Jp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(win.volume()), np);
    for (std::size_t l = 0; l < u.size(); ++l) {
      FloatFilter rest = delta<double>(f.dim);
      for (std::size_t o = 0; o < u.size(); ++o)
        if (o != l) rest = convolve(rest, u[o]);
      const int fac = factor_of(l);
      for (Eigen::Index j = 0; j < np; ++j) {
        const auto& cj = coeff[l][static_cast<std::size_t>(j)];
        if (cj.empty()) continue;
        FloatFilter da = convolve(fac == 1 ? cj : upsample(cj, fac), rest);
        auto col = sample_residual(da, win, MR, 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) Jp(static_cast<Eigen::Index>(i), j) += col[i];
      }
    }
    return Jp * A;
  }
};

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Damped Gauss-Newton over the variables flagged in `active`. Returns iterations used.
int gauss_newton(const Problem& pb, Eigen::VectorXd& x, const std::vector<bool>& active, double tol, int max_it,
                 bool require_tol) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < active.size(); ++i)
    if (active[i]) idx.push_back(static_cast<Eigen::Index>(i));
  if (idx.empty()) return 0;
  Eigen::VectorXd r = pb.residual(x);
  int it = 0;
  for (; it < max_it; ++it) {
    if (inf_norm(r) <= tol) return it;
    Eigen::MatrixXd Jf = pb.jacobian(x);
    Eigen::MatrixXd J(Jf.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) J.col(static_cast<Eigen::Index>(c)) = Jf.col(idx[c]);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(J);
    Eigen::VectorXd step = cod.solve(-r);
    const double r2 = r.squaredNorm();
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-12) {
      Eigen::VectorXd xt = x;
      for (std::size_t c = 0; c < idx.size(); ++c) xt(idx[c]) += lambda * step(static_cast<Eigen::Index>(c));
      Eigen::VectorXd rt = pb.residual(xt);
      if (rt.squaredNorm() < r2) {
        x = xt;
        r = rt;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    if (!require_tol && step.norm() * lambda < 1e-14 * (1 + x.norm())) break;
  }
  return it;
}

}  // namespace

template <class T>
std::vector<T> interpolatory_residual(const MaskFamily& f, const std::vector<T>& params) {
  auto masks = f.evaluate(params);
  Scheme<T> s = make_scheme(masks, f.dilation, false);
  auto a = combined_mask(s);
  const int MR = combined_dilation(f.dilation, f.period());
  return sample_residual(a, residual_window(f), MR, Scalar<T>::from_rational(rational_power(MR, -f.dim)));
}

template std::vector<Rational> interpolatory_residual<Rational>(const MaskFamily&, const std::vector<Rational>&);
template std::vector<double> interpolatory_residual<double>(const MaskFamily&, const std::vector<double>&);

SolveResult solve_parameters(const MaskFamily& f, const std::map<std::string, AffineExpr>& fixed,
                             const std::map<std::string, double>& start, const SolveOptions& opt) {
  for (const auto& [name, e] : fixed) {
    if (f.param_index(name) < 0) fail(ErrorCode::invalid_parameters, "family has no parameter '" + name + "'");
    for (const auto& [v, c] : e.coeff)
      if (fixed.count(v)) fail(ErrorCode::invalid_parameters, "fixed parameter '" + name + "' refers to fixed '" + v + "'");
  }
  std::vector<std::string> vars;
  std::set<std::string> seen;
  for (const auto& p : f.params)
    if (!fixed.count(p) && seen.insert(p).second) vars.push_back(p);
  for (const auto& [name, e] : fixed)
    for (const auto& [v, c] : e.coeff)
      if (seen.insert(v).second) vars.push_back(v);
  for (const auto& [name, v] : start)
    if (!seen.count(name)) fail(ErrorCode::invalid_parameters, "start value for unknown variable '" + name + "'");

  const auto np = static_cast<Eigen::Index>(f.params.size());
  const auto nv = static_cast<Eigen::Index>(vars.size());
  auto var_index = [&](const std::string& n) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == n) return static_cast<Eigen::Index>(i);
    return Eigen::Index(-1);
  };

  Problem pb{f, vars, Eigen::MatrixXd::Zero(np, nv), Eigen::VectorXd::Zero(np), residual_window(f),
             combined_dilation(f.dilation, f.period()), {}, {}};
  for (Eigen::Index j = 0; j < np; ++j) {
    const auto& name = f.params[static_cast<std::size_t>(j)];
    auto it = fixed.find(name);
    if (it == fixed.end()) {
      pb.A(j, var_index(name)) = 1;
    } else {
      pb.c(j) = it->second.constant.get_d();
      for (const auto& [v, co] : it->second.coeff) pb.A(j, var_index(v)) = co.get_d();
    }
  }
  for (std::size_t l = 0; l < f.base.size(); ++l) {
    pb.base.push_back(to_float(f.base[l]));
    pb.coeff.emplace_back();
    for (const auto& c : f.coeff[l]) pb.coeff.back().push_back(to_float(c));
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(nv);
  std::vector<bool> unstarted(static_cast<std::size_t>(nv), true);
  for (const auto& [name, v] : start) {
    x(var_index(name)) = v;
    unstarted[static_cast<std::size_t>(var_index(name))] = false;
  }
  SolveResult res;
  res.variables = vars;
  const bool warm = !start.empty() && static_cast<Eigen::Index>(start.size()) < nv;
  if (warm) res.iterations += gauss_newton(pb, x, unstarted, opt.tolerance, 50, false);
  res.iterations += gauss_newton(pb, x, std::vector<bool>(static_cast<std::size_t>(nv), true), opt.tolerance,
                                 opt.max_iterations, true);

  Eigen::VectorXd r = pb.residual(x);
  res.residual_inf = inf_norm(r);
  if (nv > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(pb.jacobian(x));
    qr.setThreshold(1e-9);
    res.jacobian_rank = static_cast<int>(qr.rank());
  }
  res.nullspace_dim = static_cast<int>(nv) - res.jacobian_rank;
  res.variable_values.assign(x.data(), x.data() + nv);
  Eigen::VectorXd p = pb.params(x);
  res.params.assign(p.data(), p.data() + np);
  if (!(res.residual_inf <= opt.tolerance))
    fail(ErrorCode::no_convergence, "Gauss-Newton stopped with residual " + format_double(res.residual_inf) +
                                        " after " + std::to_string(res.iterations) + " iterations (Jacobian rank " +
                                        std::to_string(res.jacobian_rank) + ", nullspace dimension " +
                                        std::to_string(res.nullspace_dim) + ")");
  return res;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] == 0.0) ++lead;
  if (coeffs.size() - lead < 2) fail(ErrorCode::invalid_argument, "polynomial must have degree >= 1");
  const auto n = static_cast<Eigen::Index>(coeffs.size() - lead - 1);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) C(0, j) = -coeffs[lead + 1 + static_cast<std::size_t>(j)] / coeffs[lead];
  for (Eigen::Index i = 1; i < n; ++i) C(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "companion eigenvalues did not converge");
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z))) {
      long double x = z.real();
      for (int it = 0; it < 50; ++it) {
        long double p = 0, dp = 0;
        for (std::size_t k = lead; k < coeffs.size(); ++k) {
          dp = dp * x + p;
          p = p * x + coeffs[k];
        }
        if (dp == 0) break;
        long double nx = x - p / dp;
        if (std::fabs(static_cast<double>(nx - x)) <= 1e-18 * std::max(1.0L, std::fabs(x))) {
          x = nx;
          break;
        }
        x = nx;
      }
      z = {static_cast<double>(x), 0.0};
    }
    roots.push_back(z);
  }
  return roots;
}

double real_root_near(const std::vector<double>& coeffs, double guess) {
  double best = NAN, dist = INFINITY;
  for (auto z : polynomial_roots(coeffs))
    if (z.imag() == 0.0 && std::fabs(z.real() - guess) < dist) {
      dist = std::fabs(z.real() - guess);
      best = z.real();
    }
  if (std::isnan(best)) fail(ErrorCode::numerical_failure, "polynomial has no real root");
  return best;
}

double eval_polynomial(const std::vector<Rational>& coeffs, double x) {
  long double s = 0;
  for (const auto& c : coeffs) s = s * x + static_cast<long double>(c.get_d());
  return static_cast<double>(s);
}

}  // namespace qsub
