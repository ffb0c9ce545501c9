#include "core/factorization.hpp"

#include <numbers>

#include "core/smoothness.hpp"

namespace qsub {

namespace {

// In-place transform along every axis of a dense array on [0, D]:
//   forward:  c_b = sum_{k >= b} C(k, b) p_k           (z-basis -> y = z - 1 basis)
//   inverse:  p_k = sum_{g >= k} C(g, k) (-1)^{g-k} c_g
void binomial_transform(std::vector<Rational>& data, const LatticeBox& box, bool inverse) {
  const int d = box.dim();
  for (int axis = 0; axis < d; ++axis) {
    const int len = box.extent(static_cast<std::size_t>(axis));
    const std::size_t stride = box.strides()[static_cast<std::size_t>(axis)];
    std::vector<std::vector<mpz_class>> binom(static_cast<std::size_t>(len), std::vector<mpz_class>(static_cast<std::size_t>(len)));
    for (int k = 0; k < len; ++k)
      for (int b = 0; b <= k; ++b) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(b));
        if (inverse && (k - b) % 2 != 0) c = -c;
        binom[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)] = c;
      }
    std::vector<Rational> line(static_cast<std::size_t>(len)), out(static_cast<std::size_t>(len));
    box.for_each([&](const MultiIndex& k, std::size_t o) {
      if (k[static_cast<std::size_t>(axis)] != box.lo()[static_cast<std::size_t>(axis)]) return;
      for (int i = 0; i < len; ++i) line[static_cast<std::size_t>(i)] = data[o + static_cast<std::size_t>(i) * stride];
      for (int b = 0; b < len; ++b) {
        Rational s = 0;
        for (int kk = b; kk < len; ++kk)
          if (sgn(line[static_cast<std::size_t>(kk)]) != 0)
            s += binom[static_cast<std::size_t>(kk)][static_cast<std::size_t>(b)] * line[static_cast<std::size_t>(kk)];
        out[static_cast<std::size_t>(b)] = s;
      }
      for (int i = 0; i < len; ++i) data[o + static_cast<std::size_t>(i) * stride] = out[static_cast<std::size_t>(i)];
    });
  }
}

// Greedy alpha <= beta with |alpha| = m (requires |beta| >= m).
MultiIndex split_exponent(const MultiIndex& beta, int m) {
  MultiIndex alpha(beta.size(), 0);
  int left = m;
  for (std::size_t i = 0; i < beta.size() && left > 0; ++i) {
    alpha[i] = std::min(beta[i], left);
    left -= alpha[i];
  }
  return alpha;
}

// p = sum_{|alpha|=m} (1 - z)^alpha w_alpha in the ring of Laurent polynomials.
FactorFamily ideal_decompose(const RationalFilter& p, int m) {
  const int d = p.dim();
  FactorFamily w;
  for (const auto& alpha : exponents_of_order(d, m)) w.emplace(alpha, RationalFilter(d));
  if (p.empty()) return w;
  const MultiIndex lo = p.box().lo();
  LatticeBox box(MultiIndex(static_cast<std::size_t>(d), 0), p.box().hi() - lo);
  std::vector<Rational> c = p.values();
  binomial_transform(c, box, false);

  std::map<MultiIndex, std::vector<Rational>> parts;
  for (const auto& [alpha, f] : w) parts.emplace(alpha, std::vector<Rational>(box.volume(), Rational(0)));
  const Rational sign = (m % 2 == 0) ? 1 : -1;
  box.for_each([&](const MultiIndex& beta, std::size_t o) {
    if (sgn(c[o]) == 0) return;
    if (beta.total() < m) fail(ErrorCode::hypothesis_violated, "coset does not vanish to order " + std::to_string(m));
    MultiIndex alpha = split_exponent(beta, m);
    parts[alpha][box.offset(beta - alpha)] += sign * c[o];
  });
  for (auto& [alpha, data] : parts) {
    binomial_transform(data, box, true);
    w[alpha] = shift(RationalFilter(box, std::move(data)), lo);
  }
  return w;
}

}  // namespace

RationalFilter lemma21_expand(const FactorFamily& v, int N, int dim) {
  RationalFilter out(dim);
  for (const auto& [alpha, f] : v) {
    auto op = upsample(axis_difference(delta<Rational>(dim), alpha), N);
    out = out + convolve(op, f);
  }
  return out;
}

FactorFamily lemma21_factorize(const RationalFilter& u, int N, int m) {
  require_dilation(N);
  if (m < 0) fail(ErrorCode::invalid_argument, "order must be >= 0");
  const int d = u.dim();
  if (m == 0) return {{MultiIndex(static_cast<std::size_t>(d), 0), u}};

  // Vanishing of u^ to order m at every 2 pi omega is equivalent to vanishing of each coset symbol at 0.
  for (const auto& g : coset_representatives(d, N)) {
    auto c = coset_extract(u, g, N);
    for (const auto& nu : exponents_below(d, m))
      if (sgn(moment(c, nu)) != 0)
        fail(ErrorCode::hypothesis_violated, "coset " + to_string(g) + " has nonzero moment of order " +
                                                 std::to_string(nu.total()));
  }

  FactorFamily v;
  for (const auto& alpha : exponents_of_order(d, m)) v.emplace(alpha, RationalFilter(d));
  for (const auto& g : coset_representatives(d, N)) {
    auto w = ideal_decompose(coset_extract(u, g, N), m);
    for (auto& [alpha, f] : w) v[alpha] = v[alpha] + shift(upsample(f, N), g);
  }
  if (!(lemma21_expand(v, N, d) == u)) fail(ErrorCode::numerical_failure, "factorization identity failed to verify");
  return v;
}

Lemma22Result lemma22_factorize(const RationalFilter& a, int M, const MultiIndex& mu) {
  require_dilation(M);
  if (mu.dim() != a.dim() || !mu.nonnegative()) fail(ErrorCode::invalid_dimension, "bad difference order");
  const int m = mu.total();
  const int d = a.dim();
  if (sum_rule_order(a, M, m) < m)
    fail(ErrorCode::insufficient_sum_rules, "mask has fewer than " + std::to_string(m) + " sum rules");

  Lemma22Result r;
  const RationalFilter lhs = axis_difference(a, mu);
  r.b = lemma21_factorize(lhs, M, m);
  r.identity_exact = lemma21_expand(r.b, M, d) == lhs;

  const Rational a0 = value_sum(a);
  const Rational scale0 = rational_power(M, -m) * a0;
  r.zero_frequency_exact = true;
  for (const auto& [alpha, b] : r.b)
    if (value_sum(b) != (alpha == mu ? scale0 : Rational(0))) r.zero_frequency_exact = false;

  // b_alpha^(2 pi omega) = ((i M)^m alpha!)^{-1} (nabla^mu delta)^(2 pi omega) d^alpha a^(2 pi omega),
  // i^m from d^alpha (1 - e^{-i xi})^alpha at 0 under the e^{-ik.xi} symbol
  const RationalFilter diff = axis_difference(delta<Rational>(d), mu);
  const std::complex<double> lead = std::pow(std::complex<double>(0.0, static_cast<double>(M)), m);
  for (const auto& g : coset_representatives(d, M)) {
    if (g.is_zero()) continue;
    std::vector<double> xi(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = 2 * std::numbers::pi * g[static_cast<std::size_t>(i)] / M;
    const auto dmu = fourier_eval(diff, xi);
    for (const auto& [alpha, b] : r.b) {
      double fact = 1;
      for (int c : alpha)
        for (int j = 2; j <= c; ++j) fact *= j;
      auto expected = dmu * fourier_derivative(a, alpha, xi) / (lead * fact);
      r.alias_residual = std::max(r.alias_residual, std::abs(fourier_eval(b, xi) - expected));
    }
  }
  return r;
}

}  // namespace qsub
