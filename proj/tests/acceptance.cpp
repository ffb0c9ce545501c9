// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "core/cascade.hpp"
#include "core/certify.hpp"
#include "core/factorization.hpp"
#include "core/families.hpp"
#include "core/reference_examples.hpp"
#include "core/smoothness.hpp"
#include "core/solver.hpp"
#include "test_util.hpp"

using namespace qsub;
using namespace qsub::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x, int digits = 7) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

const ExampleCheck* find_check(const ExampleReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

// All gating checks of one example, plus the quantities named in the criterion.
void example(Outcome& o, const std::string& id, double sm2, double sm2_tol, double sminf, double sminf_tol, int level,
             int order) {
  ExampleReport r = verify_reference_example(id);
  for (const auto& c : r.checks) o.require(c.passed, id + " " + c.name + " (" + c.detail + ")");
  const auto& s = r.smoothness;
  o.require(std::fabs(s.sm2.value - sm2) <= sm2_tol, id + " sm2");
  if (level > 0) {
    o.require(std::fabs(s.sm_inf_lower - sminf) <= sminf_tol, id + " sm_inf bound");
  } else {
    // bound through sm2 - d/2; a stronger coset bound may be reported on top
    o.require(std::fabs(s.sm_inf_from_sm2 - sminf) <= sminf_tol, id + " sm2 - d/2");
    o.require(s.sm_inf_lower >= s.sm_inf_from_sm2, id + " reported bound below sm2 - d/2");
  }
  if (level > 0) o.require(s.coset_bound && s.coset_bound->level == level, id + " coset bound at level " + std::to_string(level));
  o.require(s.method != BoundMethod::none, id + " lower bound method");
  o.require(s.certified && s.verdict == order, id + " C^" + std::to_string(order));
  for (int l = 0; l < s.period; ++l)
    o.require(s.mask_sum_rules[static_cast<std::size_t>(l)] > order, id + " sum rules of a" + std::to_string(l + 1));
  if (const auto* root = find_check(r, "polynomial root")) o.note(id + " root " + fmt(root->observed, 10));
  if (level == 0) o.note(id + " sm2 - d/2 " + fmt(s.sm_inf_from_sm2));
  o.note(id + " sm2 " + fmt(s.sm2.value) + ", sm_inf >= " + fmt(s.sm_inf_lower) + " (" + bound_method_name(s.method) + ")");
}

int failures = 0;

void run(int n, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.ok = false;
    o.note("runtime " + fmt(secs, 3) + " s exceeds " + fmt(budget_s, 3) + " s");
  }
  if (!o.ok) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  run(1, "ex3 D4 ring-1 example is C^1", 30, [](Outcome& o) {
    example(o, "ex3", 1.70906, 1e-3, 1.38616, 1e-3, 2, 1);
  });

  run(2, "ex1 D6 ring-1 example is C^1", 20, [](Outcome& o) {
    example(o, "ex1", 1.709055, 1e-3, 1.30098, 1e-3, 1, 1);
  });

  run(3, "ex4 D4 ring-2 examples are C^2", 180, [](Outcome& o) {
    example(o, "ex4a", 2.616519, 2e-3, 2.07607, 1e-3, 2, 2);
    example(o, "ex4b", 3.074404, 2e-3, 2.074404, 2e-3, 0, 2);
  });

  run(4, "ex2 D6 ring-2 examples are C^2", 180, [](Outcome& o) {
    example(o, "ex2a", 2.653820, 1e-3, 2.06210, 1e-3, 2, 2);
    example(o, "ex2b", 3.041495, 2e-3, 2.041495, 2e-3, 0, 2);
  });

  run(5, "hat function sm2 = 1.5 and the iterative estimate", 0, [](Outcome& o) {
    auto h = hat1d();
    double v = sm2(h, 2).value;
    o.require(std::fabs(v - 1.5) <= 1e-10, "transition operator value " + fmt(v, 17));
    double ratio = sm2_iterative_estimate(h, 2, 12, {MultiIndex{2}}, EstimateKind::ratio);
    double root = sm2_iterative_estimate(h, 2, 12, {MultiIndex{2}}, EstimateKind::root);
    o.require(std::fabs(ratio - v) <= 2e-2, "ratio estimate at n=12");
    o.note("sm2 " + fmt(v, 17) + ", ratio estimate n=12 " + fmt(ratio) + ", root estimate n=12 " + fmt(root));
  });

  run(6, "difference factorization on 25 random masks", 0, [](Outcome& o) {
    int done = 0;
    for (int t = 0; t < 25; ++t) {
      int m = 1 + t % 2;
      auto a = random_mask_with_sum_rules(2, m);
      for (const auto& mu : exponents_of_order(2, m)) {
        auto r = lemma22_factorize(a, 2, mu);
        o.require(r.identity_exact, "identity, trial " + std::to_string(t));
        o.require(r.zero_frequency_exact, "zero frequency, trial " + std::to_string(t));
        o.require(r.alias_residual < 1e-10, "alias values, trial " + std::to_string(t));
        ++done;
      }
    }
    o.note(std::to_string(done) + " factorizations");
  });

  run(7, "algebraic identities, 100 trials each", 0, [](Outcome& o) {
    int bad[4] = {0, 0, 0, 0};
    for (int t = 0; t < 100; ++t) {
      int d = 1 + t % 3, M = 2 + t % 3;
      auto f = random_rational(d, 4);
      std::map<MultiIndex, RationalFilter> parts;
      for (const auto& g : coset_representatives(d, M)) parts.emplace(g, coset_extract(f, g, M));
      if (!(coset_reconstruct(parts, M) == f)) ++bad[0];

      auto u = random_float(d), v = random_float(d);
      auto xi = random_xi(d);
      auto rhs = fourier_eval(u, xi) * fourier_eval(v, xi);
      if (std::abs(fourier_eval(convolve(u, v), xi) - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) ++bad[1];

      MultiIndex h(static_cast<std::size_t>(d));
      do {
        for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] = uniform_int(-1, 1);
      } while (h.is_zero());
      int kappa = 1 + t % 2;
      RationalFilter divisor = delta<Rational>(d);
      for (int j = 0; j < kappa; ++j) {
        RationalFilter blk(d);
        for (int s = 0; s < M; ++s) blk = blk + monomial<Rational>(s * h);
        divisor = convolve(divisor, blk);
      }
      auto w = convolve(divisor, random_rational(d));
      if (!(convolve(divisor, laurent_divide_exact(w, h, M, kappa)) == w)) ++bad[2];

      std::vector<RationalFilter> masks;
      for (int l = 0; l < 1 + t % 3; ++l) masks.push_back(random_mask_with_sum_rules(1 + t % 2, 1));
      auto s = make_scheme(masks, 2 + t % 2);
      if (!(combined_mask(s) == combined_mask_iterated(s))) ++bad[3];
    }
    o.require(bad[0] == 0, "coset reconstruction");
    o.require(bad[1] == 0, "Fourier homomorphism");
    o.require(bad[2] == 0, "Laurent division round trip");
    o.require(bad[3] == 0, "combined mask routes");
    o.note("mismatches " + std::to_string(bad[0]) + "/" + std::to_string(bad[1]) + "/" + std::to_string(bad[2]) + "/" +
           std::to_string(bad[3]));
  });

  run(8, "limit interpolates; hat second derivatives do not converge", 0, [](Outcome& o) {
    for (const char* id : {"ex1", "ex2a"}) {
      auto s = make_scheme(std::vector<RationalFilter>{std::get<RationalFilter>(reference_example_mask(id, 0)),
                                                       std::get<RationalFilter>(reference_example_mask(id, 1))},
                           2);
      auto g = cascade_samples(s, 6, MultiIndex{0, 0});
      double err = 0;
      g.box.for_each([&](const MultiIndex& k, std::size_t off) {
        for (int c : k)
          if (c % 64 != 0) return;
        err = std::max(err, std::fabs(g.values[off] - (k.is_zero() ? 1.0 : 0.0)));
      });
      o.require(err <= 1e-6, std::string(id) + " integer samples");
      o.note(std::string(id) + " max error " + fmt(err, 3));
    }
    auto hat = make_scheme(std::vector<RationalFilter>{hat2d()}, 2);
    auto rep = convergence_residuals(hat, 2, 7);
    for (const auto& ser : rep.series) {
      if (ser.mu.total() != 2) continue;
      bool pure = ser.mu == MultiIndex{2, 0} || ser.mu == MultiIndex{0, 2};
      if (pure) o.require(!ser.decays, "hat residual for mu=" + to_string(ser.mu) + " decays");
      o.note("hat mu=" + to_string(ser.mu) + " slope " + fmt(ser.slope, 3));
    }
  });

  run(9, "ring-1 families never reach C^2", 0, [](Outcome& o) {
    int certified = 0, too_many_rules = 0;
    for (int t = 0; t < 100; ++t) {
      auto fam = builtin_family(t % 2 ? "d6-ring1" : "d4-ring1");
      std::vector<Rational> p;
      for (std::size_t j = 0; j < fam.params.size(); ++j) p.push_back(make_rational(uniform_int(-60, 60), uniform_int(20, 100)));
      auto s = make_scheme(fam.evaluate(p), fam.dilation);
      auto r = certify_cm(s, 2, 1);
      if (r.certified) ++certified;
      for (int sr : r.mask_sum_rules)
        if (sr > 2) ++too_many_rules;
    }
    o.require(certified == 0, "a ring-1 draw certified C^2");
    o.require(too_many_rules == 0, "a ring-1 mask exceeded sum rules of order 2");
    o.note("100 draws, certified " + std::to_string(certified) + ", sr > 2 in " + std::to_string(too_many_rules));
  });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
