#include <doctest.h>

#include <cstring>
#include <string>

#include "qsub/qsub.h"

namespace {

const char* kHat =
    "qsubfilter 1\ndim 1\nbackend rational\n-1 1/4\n0 1/2\n1 1/4\n";
const char* kHat2 =
    "qsubfilter 1\ndim 2\nbackend rational\n"
    "-1 -1 1/16\n-1 0 1/8\n-1 1 1/16\n0 -1 1/8\n0 0 1/4\n0 1 1/8\n1 -1 1/16\n1 0 1/8\n1 1 1/16\n";

std::string take(char* s) {
  std::string out = s ? s : "";
  qsub_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API filter handles") {
  qsub_filter* h = nullptr;
  REQUIRE(qsub_filter_parse(kHat, &h) == QSUB_OK);
  int dim = 0;
  CHECK(qsub_filter_dim(h, &dim) == QSUB_OK);
  CHECK(dim == 1);
  qsub_backend b = QSUB_FLOAT;
  CHECK(qsub_filter_backend(h, &b) == QSUB_OK);
  CHECK(b == QSUB_RATIONAL);
  int sr = 0;
  CHECK(qsub_filter_sum_rules(h, 2, -1, &sr) == QSUB_OK);
  CHECK(sr == 2);
  double s2 = 0;
  CHECK(qsub_filter_sm2(h, 2, &s2) == QSUB_OK);
  CHECK(s2 == doctest::Approx(1.5));
  int k = 0;
  double v = 0;
  CHECK(qsub_filter_value(h, &k, &v) == QSUB_OK);
  CHECK(v == 0.5);

  qsub_filter* hh = nullptr;
  CHECK(qsub_filter_convolve(h, h, &hh) == QSUB_OK);
  double xi = 0.4, re = 0, im = 0, re1 = 0, im1 = 0;
  CHECK(qsub_filter_fourier_eval(hh, &xi, &re, &im) == QSUB_OK);
  CHECK(qsub_filter_fourier_eval(h, &xi, &re1, &im1) == QSUB_OK);
  CHECK(re == doctest::Approx(re1 * re1 - im1 * im1));

  char* text = nullptr;
  CHECK(qsub_filter_format(hh, &text) == QSUB_OK);
  std::string t = take(text);
  CHECK(t.rfind("qsubfilter 1", 0) == 0);
  qsub_filter_free(hh);
  qsub_filter_free(h);
}

TEST_CASE("C API errors") {
  qsub_filter* f = nullptr;
  CHECK(qsub_filter_parse("garbage", &f) == QSUB_ERR_PARSE);
  CHECK(f == nullptr);
  CHECK(std::strlen(qsub_last_error_message()) > 0);
  CHECK(std::string(qsub_status_name(QSUB_ERR_PARSE)) == "parse-error");
  CHECK(qsub_filter_parse(nullptr, &f) == QSUB_ERR_INVALID_ARGUMENT);
  CHECK(qsub_filter_delta(0, QSUB_RATIONAL, &f) == QSUB_ERR_INVALID_DIMENSION);
  CHECK(qsub_filter_load("/nonexistent/file.flt", &f) == QSUB_ERR_IO);

  qsub_filter* a = nullptr;
  qsub_filter* b = nullptr;
  REQUIRE(qsub_filter_parse(kHat, &a) == QSUB_OK);
  REQUIRE(qsub_filter_parse(kHat2, &b) == QSUB_OK);
  qsub_filter* c = nullptr;
  CHECK(qsub_filter_convolve(a, b, &c) == QSUB_ERR_INCOMPATIBLE_OPERANDS);
  const qsub_filter* masks[] = {a, b};
  qsub_scheme* s = nullptr;
  CHECK(qsub_scheme_create(masks, 2, 2, &s) != QSUB_OK);
  CHECK(qsub_scheme_create(masks, 1, 1, &s) == QSUB_ERR_INVALID_DILATION);
  CHECK(qsub_status_is_numerical(QSUB_ERR_NO_CONVERGENCE));
  CHECK_FALSE(qsub_status_is_numerical(QSUB_ERR_PARSE));
  qsub_filter_free(a);
  qsub_filter_free(b);
  CHECK(qsub_filter_dim(nullptr, nullptr) == QSUB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API schemes, reports and grids") {
  qsub_filter* h = nullptr;
  REQUIRE(qsub_filter_parse(kHat2, &h) == QSUB_OK);
  const qsub_filter* masks[] = {h};
  qsub_scheme* s = nullptr;
  REQUIRE(qsub_scheme_create(masks, 1, 2, &s) == QSUB_OK);

  char* js = nullptr;
  CHECK(qsub_certify_json(s, 0, 2, &js) == QSUB_OK);
  std::string cert = take(js);
  CHECK(cert.find("\"certified\": true") != std::string::npos);

  CHECK(qsub_analyze_json(h, 2, -1, "d4", "0,0", &js) == QSUB_OK);
  std::string an = take(js);
  CHECK(an.find("\"quantity\":\"sm2\"") != std::string::npos);
  CHECK(qsub_analyze_json(h, 2, -1, "d4", "1/3,0", &js) == QSUB_ERR_INVALID_ARGUMENT);

  int mu[2] = {0, 0};
  qsub_grid* g = nullptr;
  REQUIRE(qsub_cascade(s, 3, mu, nullptr, &g) == QSUB_OK);
  size_t n = 0;
  CHECK(qsub_grid_size(g, &n) == QSUB_OK);
  CHECK(n == 15 * 15);
  int lo[2], hi[2];
  CHECK(qsub_grid_box(g, lo, hi) == QSUB_OK);
  CHECK(lo[0] == -7);
  int origin[2] = {0, 0};
  double v = 0;
  CHECK(qsub_grid_value(g, origin, &v) == QSUB_OK);
  CHECK(v == 1.0);
  char* csv = nullptr;
  CHECK(qsub_grid_csv(g, &csv) == QSUB_OK);
  std::string c = take(csv);
  qsub_grid* back = nullptr;
  CHECK(qsub_grid_parse_csv(c.c_str(), 3, 2, &back) == QSUB_OK);
  size_t n2 = 0;
  qsub_grid_size(back, &n2);
  CHECK(n2 == n);
  unsigned char* pgm = nullptr;
  size_t len = 0;
  CHECK(qsub_grid_pgm(g, QSUB_NORMALIZE_SYMMETRIC, &pgm, &len) == QSUB_OK);
  CHECK(len > 2 * n);
  qsub_buffer_free(pgm);
  qsub_grid_free(back);
  qsub_grid_free(g);

  CHECK(qsub_convergence_json(s, 1, 5, &js) == QSUB_OK);
  CHECK(take(js).find("\"series\"") != std::string::npos);

  qsub_filter* comb = nullptr;
  CHECK(qsub_scheme_combined_mask(s, &comb) == QSUB_OK);
  qsub_filter_free(comb);
  qsub_scheme_free(s);
  qsub_filter_free(h);
}

TEST_CASE("C API construction and examples") {
  const char* fixes[] = {"t2=11/64"};
  const char* starts[] = {"t1=0"};
  char* js = nullptr;
  qsub_scheme* s = nullptr;
  REQUIRE(qsub_construct("d6-ring1", nullptr, fixes, 1, starts, 1, &js, &s) == QSUB_OK);
  std::string out = take(js);
  CHECK(out.find("\"t1\"") != std::string::npos);
  int r = 0;
  CHECK(qsub_scheme_period(s, &r) == QSUB_OK);
  CHECK(r == 2);
  qsub_scheme_free(s);

  const char* exact[] = {"t1=-11/84", "t2=11/64"};
  REQUIRE(qsub_construct("d6-ring1", nullptr, exact, 2, nullptr, 0, &js, &s) == QSUB_OK);
  CHECK(take(js).find("\"interpolatory\": true") != std::string::npos);
  qsub_filter* m = nullptr;
  CHECK(qsub_scheme_mask(s, 0, &m) == QSUB_OK);
  qsub_backend b = QSUB_FLOAT;
  qsub_filter_backend(m, &b);
  CHECK(b == QSUB_RATIONAL);
  qsub_filter_free(m);
  qsub_scheme_free(s);

  CHECK(qsub_construct("d6-ring1", "x", nullptr, 0, nullptr, 0, &js, &s) == QSUB_ERR_INVALID_ARGUMENT);
  const char* wrong[] = {"t1=1/3", "t2=11/64"};
  CHECK(qsub_construct("d6-ring1", nullptr, wrong, 2, nullptr, 0, &js, &s) == QSUB_ERR_INVALID_PARAMETERS);
  CHECK(std::string(qsub_last_error_message()).find("residual 117/2048") != std::string::npos);
  const char* bad[] = {"t2"};
  CHECK(qsub_construct("d6-ring1", nullptr, bad, 1, nullptr, 0, &js, &s) == QSUB_ERR_INVALID_PARAMETERS);

  CHECK(qsub_verify_example("ex1", &js, &s) == QSUB_OK);
  CHECK(take(js).find("\"passed\": true") != std::string::npos);
  qsub_scheme_free(s);
  CHECK(qsub_verify_example("ex0", &js, nullptr) == QSUB_ERR_INVALID_ARGUMENT);

  double coeffs[] = {32, 141, 146, 17};
  double root = 0;
  CHECK(qsub_polynomial_root_near(coeffs, 4, -0.1, &root) == QSUB_OK);
  CHECK(root == doctest::Approx(-0.1330078).epsilon(1e-6));
  double re[3], im[3];
  CHECK(qsub_polynomial_roots(coeffs, 4, re, im) == QSUB_OK);
  CHECK(qsub_example_ids(&js) == QSUB_OK);
  CHECK(take(js).find("ex4b") != std::string::npos);
}
