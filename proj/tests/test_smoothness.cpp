#include <doctest.h>

#include <cmath>

#include "core/certify.hpp"
#include "core/smoothness.hpp"
#include "core/symmetry.hpp"
#include "test_util.hpp"

using namespace qsub;
using namespace qsub::testing;

namespace {

// Centered B-spline mask of order m for M = 2: 2^-m (1+z)^m, shifted so the support is [-floor(m/2), ...].
RationalFilter bspline(int m) {
  RationalFilter a = delta<Rational>(1);
  RationalFilter f = RationalFilter::from_entries(1, {{MultiIndex{0}, Rational(1)}, {MultiIndex{1}, Rational(1)}});
  for (int i = 0; i < m; ++i) a = convolve(a, f);
  return shift(scale(a, rational_power(2, -m)), MultiIndex{-(m / 2)});
}

RationalFilter four_point() {
  // Dubuc-Deslauriers 4-point, a(2k) = delta/2
  return RationalFilter::from_entries(1, {{MultiIndex{-3}, make_rational(-1, 32)},
                                          {MultiIndex{-1}, make_rational(9, 32)},
                                          {MultiIndex{0}, make_rational(1, 2)},
                                          {MultiIndex{1}, make_rational(9, 32)},
                                          {MultiIndex{3}, make_rational(-1, 32)}});
}

}  // namespace

TEST_CASE("sum rules") {
  for (int m = 1; m <= 6; ++m) CHECK(sum_rule_order(bspline(m), 2) == m);
  CHECK(sum_rule_order(four_point(), 2) == 4);
  CHECK(sum_rule_order(delta<Rational>(2), 2) == 0);
  CHECK(sum_rule_order(hat2d(), 2) == 2);
  CHECK(sum_rule_order(bspline(6), 2, 3) == 3);  // capped
  CHECK(sum_rule_order(to_float(bspline(4)), 2) == 4);
  for (int t = 0; t < 10; ++t) CHECK(sum_rule_order(random_mask_with_sum_rules(2, 2), 2) >= 2);
}

TEST_CASE("interpolatory masks") {
  CHECK(is_interpolatory(four_point(), 2));
  CHECK(is_interpolatory(hat1d(), 2));
  CHECK(is_interpolatory(hat2d(), 2));
  CHECK_FALSE(is_interpolatory(bspline(3), 2));
  CHECK_FALSE(is_interpolatory(bspline(4), 2));
}

TEST_CASE("symmetry groups") {
  CHECK(d4_group().elements.size() == 8);
  CHECK(d6_group().elements.size() == 12);
  CHECK(is_closed(d4_group()));
  CHECK(is_closed(d6_group()));
  CHECK(is_closed(point_group(3)));
  CHECK(check_symmetry(hat2d(), d4_group(), origin(2)));
  CHECK_FALSE(check_symmetry(hat2d(), d6_group(), origin(2)));
  // (1+z1)(1+z2)/4 is D4-symmetric about (1/2, 1/2) only
  auto box = RationalFilter::from_entries(2, {{MultiIndex{0, 0}, make_rational(1, 4)}, {MultiIndex{1, 0}, make_rational(1, 4)},
                                              {MultiIndex{0, 1}, make_rational(1, 4)}, {MultiIndex{1, 1}, make_rational(1, 4)}});
  std::vector<Rational> half{make_rational(1, 2), make_rational(1, 2)};
  CHECK(check_symmetry(box, d4_group(), half));
  CHECK_FALSE(check_symmetry(box, d4_group(), origin(2)));
  CHECK_THROWS_AS(check_symmetry(box, d4_group(), std::vector<Rational>{make_rational(1, 3), Rational(0)}), Error);
  CHECK_THROWS_AS(group_by_name("d4", 3), Error);
}

TEST_CASE("difference spec table") {
  auto d4 = required_difference_specs("d4", 2, 2);
  REQUIRE(d4.size() == 2);
  CHECK(d4[0].size() == 1);
  CHECK(d4[0][0].order == 2);
  CHECK(required_difference_specs("d6", 2, 2).size() == 1);
  CHECK(required_difference_specs("d4", 4, 2).size() == 2);
  CHECK(required_difference_specs("d6", 4, 2).size() == 1);
  CHECK(required_difference_specs("none", 3, 2).size() == 4);
  CHECK(required_difference_specs("none", 2, 3).size() == 6);
}

TEST_CASE("coset-sum bound of the hat is exact") {
  auto b = divided_mask(hat1d(), 2, DifferenceSpec{{MultiIndex{1}, 2}});
  CHECK(b == scale(delta<Rational>(1), make_rational(1, 4)));
  for (int n = 1; n <= 4; ++n) {
    auto bound = sm_inf_lower(hat1d(), 2, required_difference_specs("none", 2, 1), n);
    CHECK(bound.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(divided_mask(hat1d(), 2, DifferenceSpec{{MultiIndex{1}, 3}}), Error);
}

TEST_CASE("rho_upper is exact on rationals") {
  // S_b^n delta for b = (1/2)(1, 1): all coset sums are 1
  auto b = RationalFilter::from_entries(1, {{MultiIndex{0}, make_rational(1, 2)}, {MultiIndex{1}, make_rational(1, 2)}});
  CHECK(rho_upper(b, 2, 3) == doctest::Approx(1.0));
  CHECK(rho_upper(to_float(b), 2, 3) == doctest::Approx(1.0));
}

TEST_CASE("sm2 of B-splines") {
  auto hat = sm2(hat1d(), 2);
  CHECK(hat.value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(hat.sum_rules == 2);
  for (int m = 1; m <= 5; ++m) CHECK(sm2(bspline(m), 2).value == doctest::Approx(m - 0.5).epsilon(1e-9));
  CHECK(sm2(hat2d(), 2).value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(sm2(to_float(bspline(3)), 2).value == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("sm2 cross-checks agree") {
  for (auto a : {bspline(2), bspline(3), four_point()}) {
    double v = sm2(a, 2).value;
    CHECK(sm2_by_eigenvalue_removal(a, 2) == doctest::Approx(v).epsilon(1e-6));
    CHECK(sm2_iterative_estimate(a, 2, 14, {MultiIndex{sum_rule_order(a, 2)}}, EstimateKind::ratio) ==
          doctest::Approx(v).epsilon(2e-2));
  }
  auto a = random_mask_with_sum_rules(2, 1);
  CHECK(sm2_by_eigenvalue_removal(a, 2) == doctest::Approx(sm2(a, 2).value).epsilon(1e-6));
}

TEST_CASE("root estimator error shrinks with n") {
  auto h = hat1d();
  double prev = 1e9;
  for (int n : {4, 8, 12, 16}) {
    double e = std::fabs(sm2_iterative_estimate(h, 2, n, {MultiIndex{2}}, EstimateKind::root) - 1.5);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("certification of the hat") {
  auto s = make_scheme(std::vector<RationalFilter>{hat2d()}, 2);
  auto c0 = certify_cm(s, 0, 2);
  CHECK(c0.certified);
  CHECK(c0.verdict == 0);
  auto c1 = certify_cm(s, 1, 2);
  CHECK_FALSE(c1.certified);  // bound is exactly 1, not > 1
  CHECK(c1.verdict == 0);
  CHECK(c1.sm_inf_lower == doctest::Approx(1.0));
  CHECK(c1.symmetry == std::vector<std::string>{"d4", "point"});
}

TEST_CASE("certification needs sum rules") {
  auto s = make_scheme(std::vector<RationalFilter>{bspline(1)}, 2);
  auto c = certify_cm(s, 0, 1);
  CHECK(c.verdict == -1);
  CHECK_FALSE(c.certified);
}
