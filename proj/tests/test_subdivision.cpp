#include <doctest.h>

#include "test_util.hpp"

using namespace qsub;
using namespace qsub::testing;

namespace {

// Brute force S_{a,M} v from the defining double sum.
RationalFilter direct_subdivide(const RationalFilter& a, int M, const RationalFilter& v) {
  std::vector<std::pair<MultiIndex, Rational>> out;
  const Rational md = rational_power(M, a.dim());
  v.for_each_nonzero([&](const MultiIndex& n, const Rational& vn) {
    a.for_each_nonzero([&](const MultiIndex& j, const Rational& aj) { out.push_back({M * n + j, md * vn * aj}); });
  });
  return RationalFilter::from_entries(a.dim(), out);
}

}  // namespace

TEST_CASE("one step on delta") {
  auto a = random_mask_with_sum_rules(2, 1);
  CHECK(subdivide(a, 2, delta<Rational>(2)) == scale(a, Rational(4)));
  auto h = subdivide(hat1d(), 2, delta<Rational>(1));
  CHECK(h(MultiIndex{-1}) == make_rational(1, 2));
  CHECK(h(MultiIndex{0}) == 1);
  CHECK(h(MultiIndex{1}) == make_rational(1, 2));
  CHECK(h.nonzero_count() == 3);
}

TEST_CASE("subdivision matches the defining sum") {
  for (int t = 0; t < 50; ++t) {
    int d = 1 + t % 3;
    int M = 2 + t % 2;
    auto a = random_rational(d, 2), v = random_rational(d, 2);
    CHECK(subdivide(a, M, v) == direct_subdivide(a, M, v));
  }
}

TEST_CASE("iterated subdivision") {
  auto v = random_rational(1);
  CHECK(subdivide_n(hat1d(), 2, 0, v) == v);
  CHECK(subdivide_n(hat1d(), 2, 1, v) == subdivide(hat1d(), 2, v));
  auto three = direct_subdivide(hat1d(), 2, direct_subdivide(hat1d(), 2, direct_subdivide(hat1d(), 2, delta<Rational>(1))));
  auto s3 = subdivide_n(hat1d(), 2, 3, delta<Rational>(1));
  CHECK(s3 == three);
  // hat cascade samples the hat function: value 1 - |k|/8 at k/8
  for (int k = -8; k <= 8; ++k) CHECK(s3(MultiIndex{k}) == Rational(1) - make_rational(std::abs(k), 8));
  CHECK_THROWS_AS(subdivide_n(hat1d(), 2, -1, v), Error);
}

TEST_CASE("quasi-stationary order") {
  auto a1 = random_mask_with_sum_rules(1, 1), a2 = random_mask_with_sum_rules(1, 2);
  auto s = make_scheme(std::vector<RationalFilter>{a1, a2}, 2);
  auto v = random_rational(1);
  CHECK(quasi_subdivide(s, 1, v) == subdivide(a1, 2, v));
  CHECK(quasi_subdivide(s, 2, v) == subdivide(a2, 2, subdivide(a1, 2, v)));
  CHECK(quasi_subdivide(s, 3, v) == subdivide(a1, 2, subdivide(a2, 2, subdivide(a1, 2, v))));
}

TEST_CASE("combined mask two routes") {
  for (int t = 0; t < 100; ++t) {
    int d = 1 + t % 2;
    int r = 1 + t % 3;
    int M = 2 + (t / 3) % 2;
    std::vector<RationalFilter> masks;
    for (int l = 0; l < r; ++l) masks.push_back(random_mask_with_sum_rules(d, 1));
    auto s = make_scheme(masks, M);
    auto a = combined_mask(s);
    CHECK(a == combined_mask_iterated(s));
    CHECK(value_sum(a) == 1);
    // one application of the combined mask equals one full cycle
    auto v = random_rational(d, 1);
    CHECK(subdivide(a, combined_dilation(M, r), v) == quasi_subdivide(s, r, v));
  }
}

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(make_scheme(std::vector<RationalFilter>{scale(hat1d(), Rational(2))}, 2), Error);
  CHECK_THROWS_AS(make_scheme(std::vector<RationalFilter>{hat1d(), hat2d()}, 2), Error);
  CHECK_THROWS_AS(make_scheme(std::vector<RationalFilter>{hat1d()}, 1), Error);
  CHECK_THROWS_AS(make_scheme(std::vector<RationalFilter>{}, 2), Error);
  auto fs = make_scheme(std::vector<FloatFilter>{to_float(hat1d())}, 2);
  CHECK(fs.period() == 1);
}

TEST_CASE("derivative sequence scaling") {
  auto s = make_scheme(std::vector<RationalFilter>{hat1d()}, 2);
  // slopes of the hat are +-1
  auto d = derivative_sequence(s, MultiIndex{1}, 4, delta<Rational>(1));
  Rational mx = 0;
  d.for_each_nonzero([&](const MultiIndex&, const Rational& x) { mx = std::max(mx, Rational(abs(x))); });
  CHECK(mx == 1);
}
