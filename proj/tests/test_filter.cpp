#include <doctest.h>

#include "core/filter_io.hpp"
#include "test_util.hpp"

using namespace qsub;
using namespace qsub::testing;

namespace {

RationalFilter line(int dim, std::initializer_list<std::pair<int, long>> v) {
  std::vector<std::pair<MultiIndex, Rational>> e;
  for (auto [k, x] : v) {
    MultiIndex m(static_cast<std::size_t>(dim), 0);
    m[0] = k;
    e.push_back({m, Rational(x)});
  }
  return RationalFilter::from_entries(dim, e);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("delta and its symbol") {
  auto d = delta<Rational>(2);
  CHECK(d.nonzero_count() == 1);
  CHECK(d(MultiIndex{0, 0}) == 1);
  auto z = fourier_eval(d, std::vector<double>{0.7, -1.3});
  CHECK(z.real() == doctest::Approx(1.0));
  CHECK(z.imag() == doctest::Approx(0.0));
  CHECK(code_of([] { delta<Rational>(0); }) == ErrorCode::invalid_dimension);
  auto u = random_rational(2);
  CHECK(convolve(d, u) == u);
}

TEST_CASE("convolution examples") {
  auto a = line(1, {{0, 1}, {1, 1}});
  auto b = line(1, {{0, 1}, {1, -1}});
  CHECK(convolve(a, b) == line(1, {{0, 1}, {2, -1}}));
  auto h = hat1d();
  auto hh = convolve(h, h);
  CHECK(hh.box().lo() == MultiIndex{-2});
  CHECK(hh.box().hi() == MultiIndex{2});
  const long expect[] = {1, 4, 6, 4, 1};
  for (int k = -2; k <= 2; ++k) CHECK(hh(MultiIndex{k}) == make_rational(expect[k + 2], 16));
  CHECK(code_of([] { convolve(delta<Rational>(1), delta<Rational>(2)); }) == ErrorCode::incompatible_operands);
}

TEST_CASE("convolution is commutative and associative") {
  for (int t = 0; t < 100; ++t) {
    int d = 1 + t % 3;
    auto u = random_rational(d, 2), v = random_rational(d, 2), w = random_rational(d, 2);
    CHECK(convolve(u, v) == convolve(v, u));
    CHECK(convolve(convolve(u, v), w) == convolve(u, convolve(v, w)));
  }
}

TEST_CASE("Fourier series is a homomorphism") {
  for (int t = 0; t < 100; ++t) {
    int d = 1 + t % 3;
    auto u = random_float(d), v = random_float(d);
    auto xi = random_xi(d);
    auto lhs = fourier_eval(convolve(u, v), xi);
    auto rhs = fourier_eval(u, xi) * fourier_eval(v, xi);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("upsampling") {
  CHECK(upsample(delta<Rational>(2), 3) == delta<Rational>(2));
  auto u = RationalFilter::from_entries(2, {{MultiIndex{1, 0}, Rational(5)}});
  CHECK(upsample(u, 2) == RationalFilter::from_entries(2, {{MultiIndex{2, 0}, Rational(5)}}));
  for (int t = 0; t < 20; ++t) {
    auto f = random_float(2);
    auto xi = random_xi(2);
    std::vector<double> xi2{2 * xi[0], 2 * xi[1]};
    CHECK(std::abs(fourier_eval(upsample(f, 2), xi) - fourier_eval(f, xi2)) < 1e-12);
  }
  CHECK(code_of([] { upsample(delta<Rational>(1), 1); }) == ErrorCode::invalid_dilation);
}

TEST_CASE("difference symbols") {
  auto d1 = difference(delta<Rational>(2), DifferenceSpec{{MultiIndex{1, 0}, 1}});
  CHECK(d1 == RationalFilter::from_entries(2, {{MultiIndex{0, 0}, Rational(1)}, {MultiIndex{1, 0}, Rational(-1)}}));
  auto xi = std::vector<double>{0.3, 1.1};
  auto z = fourier_eval(d1, xi);
  auto expect = 1.0 - std::exp(std::complex<double>(0, -xi[0]));
  CHECK(std::abs(z - expect) < 1e-14);
  auto d11 = axis_difference(delta<double>(2), MultiIndex{1, 1});
  for (int t = 0; t < 10; ++t) {
    auto x = random_xi(2);
    auto want = (1.0 - std::exp(std::complex<double>(0, -x[0]))) * (1.0 - std::exp(std::complex<double>(0, -x[1])));
    CHECK(std::abs(fourier_eval(d11, x) - want) < 1e-13);
  }
  CHECK(code_of([] { difference(delta<Rational>(2), DifferenceSpec{{MultiIndex{0, 0}, 1}}); }) ==
        ErrorCode::invalid_direction);
}

TEST_CASE("differences annihilate constants") {
  for (int t = 0; t < 100; ++t) {
    int d = 1 + t % 3;
    auto u = random_rational(d);
    MultiIndex h(static_cast<std::size_t>(d));
    do {
      for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] = uniform_int(-2, 2);
    } while (h.is_zero());
    CHECK(value_sum(difference(u, DifferenceSpec{{h, 1 + t % 2}})) == 0);
  }
}

TEST_CASE("moments") {
  CHECK(moment(delta<Rational>(2), MultiIndex{0, 0}) == 1);
  CHECK(moment(delta<Rational>(2), MultiIndex{1, 0}) == 0);
  CHECK(moment(hat1d(), MultiIndex{1}) == 0);
  CHECK(moment(hat1d(), MultiIndex{2}) == make_rational(1, 2));
}

TEST_CASE("cosets") {
  auto d = delta<Rational>(2);
  CHECK(coset_extract(d, MultiIndex{0, 0}, 2) == d);
  CHECK(coset_extract(d, MultiIndex{1, 0}, 2).empty());
  auto u = line(1, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(coset_extract(u, MultiIndex{1}, 2) == line(1, {{0, 2}, {1, 4}}));
  CHECK(code_of([&] { coset_extract(u, MultiIndex{2}, 2); }) == ErrorCode::invalid_coset);

  std::map<MultiIndex, RationalFilter> partial{{MultiIndex{0}, u}};
  CHECK(code_of([&] { coset_reconstruct(partial, 2); }) == ErrorCode::invalid_coset_family);
  std::map<MultiIndex, RationalFilter> empty{{MultiIndex{0}, RationalFilter(1)}, {MultiIndex{1}, RationalFilter(1)}};
  CHECK(coset_reconstruct(empty, 2).empty());

  for (int t = 0; t < 100; ++t) {
    int d2 = 1 + t % 3;
    int M = 2 + t % 3;
    auto f = random_rational(d2, 4);
    std::map<MultiIndex, RationalFilter> parts;
    for (const auto& g : coset_representatives(d2, M)) parts.emplace(g, coset_extract(f, g, M));
    CHECK(coset_reconstruct(parts, M) == f);
  }
}

TEST_CASE("directional Laurent division") {
  auto ones = line(1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  CHECK(laurent_divide_exact(ones, MultiIndex{1}, 4, 1) == delta<Rational>(1));
  CHECK(laurent_divide_exact(line(1, {{0, 1}, {1, 2}, {2, 1}}), MultiIndex{1}, 2, 2) == delta<Rational>(1));
  CHECK(code_of([] { laurent_divide_exact(line(1, {{0, 1}, {1, 1}, {2, 1}}), MultiIndex{1}, 2, 1); }) ==
        ErrorCode::not_divisible);
  CHECK(code_of([] { laurent_divide_exact(delta<Rational>(2), MultiIndex{0, 0}, 2, 1); }) == ErrorCode::invalid_direction);

  // multiply back reproduces the dividend exactly
  for (int t = 0; t < 100; ++t) {
    int d = 1 + t % 3;
    int M = 2 + t % 3;
    int kappa = 1 + t % 2;
    MultiIndex h(static_cast<std::size_t>(d));
    do {
      for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] = uniform_int(-1, 1);
    } while (h.is_zero());
    auto b = random_rational(d);
    if (b.empty()) b = delta<Rational>(d);
    RationalFilter divisor = delta<Rational>(d);
    for (int j = 0; j < kappa; ++j) {
      RationalFilter blk(d);
      for (int s = 0; s < M; ++s) blk = blk + monomial<Rational>(s * h);
      divisor = convolve(divisor, blk);
    }
    auto u = convolve(divisor, b);
    auto q = laurent_divide_exact(u, h, M, kappa);
    CHECK(q == b);
    CHECK(convolve(divisor, q) == u);
  }
}

TEST_CASE("float division tolerates rounding only") {
  auto u = to_float(convolve(line(1, {{0, 1}, {1, 1}}), line(1, {{0, 3}, {1, -1}, {2, 2}})));
  auto q = laurent_divide_exact(u, MultiIndex{1}, 2, 1);
  CHECK(max_abs(q - to_float(line(1, {{0, 3}, {1, -1}, {2, 2}}))) < 1e-14);
  auto bad = to_float(line(1, {{0, 1}, {1, 1}, {2, 1}}));
  CHECK(code_of([&] { laurent_divide_exact(bad, MultiIndex{1}, 2, 1); }) == ErrorCode::not_divisible);
}

TEST_CASE("normalization prunes only on request") {
  auto f = FloatFilter::from_entries(1, {{MultiIndex{0}, 1.0}, {MultiIndex{3}, 1e-16}});
  CHECK(f.nonzero_count() == 2);
  auto g = normalized(f);
  CHECK(g.nonzero_count() == 1);
  CHECK(g.box().hi() == MultiIndex{0});
}

TEST_CASE("filter text format") {
  auto r = random_rational(2);
  auto back = parse_filter(format_filter(AnyFilter(r)));
  CHECK(std::get<RationalFilter>(back) == r);
  auto f = random_float(3);
  auto fb = parse_filter(format_filter(AnyFilter(f)));
  CHECK(std::get<FloatFilter>(fb) == f);

  auto parsed = parse_filter("qsubfilter 1\ndim 2\nbackend rational\n# comment\n0 0 1/2  # center\n1 0 1/4\n-1 0 2/8\n");
  auto& pr = std::get<RationalFilter>(parsed);
  CHECK(pr(MultiIndex{-1, 0}) == make_rational(1, 4));
  CHECK(value_sum(pr) == 1);

  CHECK(code_of([] { parse_filter("qsubfilter 1\ndim 1\nbackend rational\n0 1\n0 2\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_filter("qsubfilter 2\ndim 1\nbackend rational\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_filter("qsubfilter 1\ndim 1\nbackend rational\n0 1/0\n"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { parse_filter("qsubfilter 1\ndim 2\nbackend float\n0 1\n"); }) == ErrorCode::parse_error);
}

TEST_CASE("control nets") {
  auto v = parse_control_net("k1,k2,value\n0,0,1\n1,0,-2.5\n", Backend::floating);
  auto& f = std::get<FloatFilter>(v);
  CHECK(f(MultiIndex{1, 0}) == -2.5);
  auto again = parse_control_net(format_control_net(v), Backend::floating);
  CHECK(std::get<FloatFilter>(again) == f);
  CHECK(code_of([] { parse_control_net("k1,value\n0,1\n0,2\n", Backend::rational); }) == ErrorCode::parse_error);
}

TEST_CASE("boxes above the size limit are refused") {
  CHECK(code_of([] { LatticeBox(MultiIndex{0, 0}, MultiIndex{20000, 20000}); }) == ErrorCode::level_too_large);
}
