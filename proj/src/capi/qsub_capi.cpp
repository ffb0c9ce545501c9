#include "qsub/qsub.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <variant>

#include "core/cascade.hpp"
#include "core/families.hpp"
#include "core/filter_io.hpp"
#include "core/reference_examples.hpp"
#include "core/report.hpp"
#include "core/solver.hpp"

using namespace qsub;

using AnyScheme = std::variant<Scheme<Rational>, Scheme<double>>;

struct qsub_filter {
  AnyFilter f;
};
struct qsub_scheme {
  AnyScheme s;
};
struct qsub_grid {
  SampleGrid g;
};

namespace {

thread_local std::string g_last_error;

qsub_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return QSUB_ERR_INVALID_ARGUMENT;
    case ErrorCode::invalid_dimension: return QSUB_ERR_INVALID_DIMENSION;
    case ErrorCode::incompatible_operands: return QSUB_ERR_INCOMPATIBLE_OPERANDS;
    case ErrorCode::invalid_coset: return QSUB_ERR_INVALID_COSET;
    case ErrorCode::invalid_coset_family: return QSUB_ERR_INVALID_COSET_FAMILY;
    case ErrorCode::invalid_direction: return QSUB_ERR_INVALID_DIRECTION;
    case ErrorCode::not_divisible: return QSUB_ERR_NOT_DIVISIBLE;
    case ErrorCode::invalid_dilation: return QSUB_ERR_INVALID_DILATION;
    case ErrorCode::level_too_large: return QSUB_ERR_LEVEL_TOO_LARGE;
    case ErrorCode::hypothesis_violated: return QSUB_ERR_HYPOTHESIS_VIOLATED;
    case ErrorCode::insufficient_sum_rules: return QSUB_ERR_INSUFFICIENT_SUM_RULES;
    case ErrorCode::invalid_parameters: return QSUB_ERR_INVALID_PARAMETERS;
    case ErrorCode::parse_error: return QSUB_ERR_PARSE;
    case ErrorCode::io_error: return QSUB_ERR_IO;
    case ErrorCode::unsupported: return QSUB_ERR_UNSUPPORTED;
    case ErrorCode::unsupported_dimension: return QSUB_ERR_UNSUPPORTED_DIMENSION;
    case ErrorCode::numerical_failure: return QSUB_ERR_NUMERICAL_FAILURE;
    case ErrorCode::no_convergence: return QSUB_ERR_NO_CONVERGENCE;
  }
  return QSUB_ERR_INTERNAL;
}

template <class Fn>
qsub_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QSUB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QSUB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSUB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

MultiIndex read_index(const int* k, int dim) {
  need(k, "index");
  return MultiIndex(std::span<const int>(k, static_cast<std::size_t>(dim)));
}

AnyScheme scheme_of(const std::vector<AnyFilter>& masks, int M) {
  if (masks.empty()) fail(ErrorCode::invalid_argument, "scheme needs at least one mask");
  const Backend b = backend_of(masks.front());
  for (const auto& m : masks)
    if (backend_of(m) != b) fail(ErrorCode::incompatible_operands, "masks mix rational and float backends");
  if (b == Backend::rational) {
    std::vector<RationalFilter> v;
    for (const auto& m : masks) v.push_back(std::get<RationalFilter>(m));
    return make_scheme(std::move(v), M);
  }
  std::vector<FloatFilter> v;
  for (const auto& m : masks) v.push_back(std::get<FloatFilter>(m));
  return make_scheme(std::move(v), M);
}

std::pair<std::string, std::string> split_assignment(const char* s) {
  need(s, "assignment");
  std::string t(s);
  auto eq = t.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::invalid_parameters, "expected name=value, got '" + t + "'");
  auto trim = [](std::string x) {
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    std::size_t i = 0;
    while (i < x.size() && std::isspace(static_cast<unsigned char>(x[i]))) ++i;
    return x.substr(i);
  };
  return {trim(t.substr(0, eq)), trim(t.substr(eq + 1))};
}

std::vector<double> read_coeffs(const double* c, size_t n) {
  need(c, "coefficients");
  if (n < 2) fail(ErrorCode::invalid_argument, "polynomial must have degree >= 1");
  return std::vector<double>(c, c + n);
}

}  // namespace

extern "C" {

const char* qsub_last_error_message(void) { return g_last_error.c_str(); }

const char* qsub_status_name(qsub_status s) {
  switch (s) {
    case QSUB_OK: return "ok";
    case QSUB_ERR_INVALID_ARGUMENT: return error_code_name(ErrorCode::invalid_argument);
    case QSUB_ERR_INVALID_DIMENSION: return error_code_name(ErrorCode::invalid_dimension);
    case QSUB_ERR_INCOMPATIBLE_OPERANDS: return error_code_name(ErrorCode::incompatible_operands);
    case QSUB_ERR_INVALID_COSET: return error_code_name(ErrorCode::invalid_coset);
    case QSUB_ERR_INVALID_COSET_FAMILY: return error_code_name(ErrorCode::invalid_coset_family);
    case QSUB_ERR_INVALID_DIRECTION: return error_code_name(ErrorCode::invalid_direction);
    case QSUB_ERR_NOT_DIVISIBLE: return error_code_name(ErrorCode::not_divisible);
    case QSUB_ERR_INVALID_DILATION: return error_code_name(ErrorCode::invalid_dilation);
    case QSUB_ERR_LEVEL_TOO_LARGE: return error_code_name(ErrorCode::level_too_large);
    case QSUB_ERR_HYPOTHESIS_VIOLATED: return error_code_name(ErrorCode::hypothesis_violated);
    case QSUB_ERR_INSUFFICIENT_SUM_RULES: return error_code_name(ErrorCode::insufficient_sum_rules);
    case QSUB_ERR_INVALID_PARAMETERS: return error_code_name(ErrorCode::invalid_parameters);
    case QSUB_ERR_PARSE: return error_code_name(ErrorCode::parse_error);
    case QSUB_ERR_IO: return error_code_name(ErrorCode::io_error);
    case QSUB_ERR_UNSUPPORTED: return error_code_name(ErrorCode::unsupported);
    case QSUB_ERR_UNSUPPORTED_DIMENSION: return error_code_name(ErrorCode::unsupported_dimension);
    case QSUB_ERR_NUMERICAL_FAILURE: return error_code_name(ErrorCode::numerical_failure);
    case QSUB_ERR_NO_CONVERGENCE: return error_code_name(ErrorCode::no_convergence);
    case QSUB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int qsub_status_is_numerical(qsub_status s) {
  return s == QSUB_ERR_NUMERICAL_FAILURE || s == QSUB_ERR_NO_CONVERGENCE || s == QSUB_ERR_NOT_DIVISIBLE ||
         s == QSUB_ERR_LEVEL_TOO_LARGE || s == QSUB_ERR_INTERNAL;
}

void qsub_string_free(char* s) { std::free(s); }
void qsub_buffer_free(unsigned char* b) { std::free(b); }

qsub_status qsub_filter_parse(const char* text, qsub_filter** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new qsub_filter{parse_filter(text)};
  });
}

qsub_status qsub_filter_load(const char* path, qsub_filter** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new qsub_filter{load_filter(path)};
  });
}

qsub_status qsub_filter_save(const qsub_filter* f, const char* path) {
  return guard([&] {
    need(f, "filter");
    need(path, "path");
    save_filter(f->f, path);
  });
}

qsub_status qsub_filter_format(const qsub_filter* f, char** out) {
  return guard([&] {
    need(f, "filter");
    need(out, "out");
    *out = dup_string(format_filter(f->f));
  });
}

qsub_status qsub_filter_delta(int dim, qsub_backend backend, qsub_filter** out) {
  return guard([&] {
    need(out, "out");
    if (backend == QSUB_RATIONAL)
      *out = new qsub_filter{delta<Rational>(dim)};
    else
      *out = new qsub_filter{delta<double>(dim)};
  });
}

qsub_status qsub_filter_clone(const qsub_filter* f, qsub_filter** out) {
  return guard([&] {
    need(f, "filter");
    need(out, "out");
    *out = new qsub_filter{f->f};
  });
}

void qsub_filter_free(qsub_filter* f) { delete f; }

qsub_status qsub_filter_dim(const qsub_filter* f, int* out) {
  return guard([&] {
    need(f, "filter");
    need(out, "out");
    *out = dim_of(f->f);
  });
}

qsub_status qsub_filter_backend(const qsub_filter* f, qsub_backend* out) {
  return guard([&] {
    need(f, "filter");
    need(out, "out");
    *out = backend_of(f->f) == Backend::rational ? QSUB_RATIONAL : QSUB_FLOAT;
  });
}

qsub_status qsub_filter_value(const qsub_filter* f, const int* k, double* out) {
  return guard([&] {
    need(f, "filter");
    need(out, "out");
    MultiIndex idx = read_index(k, dim_of(f->f));
    *out = std::visit([&](const auto& u) { return Scalar<typename std::decay_t<decltype(u)>::value_type>::to_double(u(idx)); }, f->f);
  });
}

qsub_status qsub_filter_convolve(const qsub_filter* u, const qsub_filter* v, qsub_filter** out) {
  return guard([&] {
    need(u, "u");
    need(v, "v");
    need(out, "out");
    if (u->f.index() != v->f.index()) fail(ErrorCode::incompatible_operands, "filters use different backends");
    *out = new qsub_filter{std::visit(
        [&](const auto& a) -> AnyFilter { return convolve(a, std::get<std::decay_t<decltype(a)>>(v->f)); }, u->f)};
  });
}

qsub_status qsub_filter_upsample(const qsub_filter* u, int M, qsub_filter** out) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    *out = new qsub_filter{std::visit([&](const auto& a) -> AnyFilter { return upsample(a, M); }, u->f)};
  });
}

qsub_status qsub_filter_to_float(const qsub_filter* u, qsub_filter** out) {
  return guard([&] {
    need(u, "u");
    need(out, "out");
    *out = new qsub_filter{std::visit([&](const auto& a) -> AnyFilter { return to_float(a); }, u->f)};
  });
}

qsub_status qsub_filter_fourier_eval(const qsub_filter* u, const double* xi, double* re, double* im) {
  return guard([&] {
    need(u, "u");
    need(xi, "xi");
    need(re, "re");
    need(im, "im");
    std::vector<double> x(xi, xi + dim_of(u->f));
    auto z = std::visit([&](const auto& a) { return fourier_eval(a, x); }, u->f);
    *re = z.real();
    *im = z.imag();
  });
}

qsub_status qsub_filter_sum_rules(const qsub_filter* a, int M, int max_sr, int* out) {
  return guard([&] {
    need(a, "mask");
    need(out, "out");
    std::optional<int> cap;
    if (max_sr >= 0) cap = max_sr;
    *out = std::visit([&](const auto& f) { return sum_rule_order(f, M, cap); }, a->f);
  });
}

qsub_status qsub_filter_is_interpolatory(const qsub_filter* a, int M, int* out) {
  return guard([&] {
    need(a, "mask");
    need(out, "out");
    *out = std::visit([&](const auto& f) { return is_interpolatory(f, M); }, a->f) ? 1 : 0;
  });
}

qsub_status qsub_filter_sm2(const qsub_filter* a, int M, double* out) {
  return guard([&] {
    need(a, "mask");
    need(out, "out");
    *out = std::visit([&](const auto& f) { return sm2(f, M).value; }, a->f);
  });
}

qsub_status qsub_control_net_parse(const char* text, qsub_backend backend, qsub_filter** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new qsub_filter{parse_control_net(text, backend == QSUB_RATIONAL ? Backend::rational : Backend::floating)};
  });
}

qsub_status qsub_control_net_format(const qsub_filter* v, char** out) {
  return guard([&] {
    need(v, "net");
    need(out, "out");
    *out = dup_string(format_control_net(v->f));
  });
}

qsub_status qsub_scheme_create(const qsub_filter* const* masks, size_t count, int M, qsub_scheme** out) {
  return guard([&] {
    need(masks, "masks");
    need(out, "out");
    std::vector<AnyFilter> v;
    for (size_t i = 0; i < count; ++i) {
      need(masks[i], "mask");
      v.push_back(masks[i]->f);
    }
    *out = new qsub_scheme{scheme_of(v, M)};
  });
}

void qsub_scheme_free(qsub_scheme* s) { delete s; }

qsub_status qsub_scheme_period(const qsub_scheme* s, int* out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    *out = std::visit([](const auto& x) { return x.period(); }, s->s);
  });
}

qsub_status qsub_scheme_dilation(const qsub_scheme* s, int* out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    *out = std::visit([](const auto& x) { return x.dilation; }, s->s);
  });
}

qsub_status qsub_scheme_mask(const qsub_scheme* s, int index, qsub_filter** out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    *out = new qsub_filter{std::visit(
        [&](const auto& x) -> AnyFilter {
          if (index < 0 || index >= x.period()) fail(ErrorCode::invalid_argument, "mask index out of range");
          return x.masks[static_cast<std::size_t>(index)];
        },
        s->s)};
  });
}

qsub_status qsub_scheme_subdivide(const qsub_scheme* s, int levels, const qsub_filter* v, qsub_filter** out) {
  return guard([&] {
    need(s, "scheme");
    need(v, "input");
    need(out, "out");
    *out = new qsub_filter{std::visit(
        [&](const auto& x) -> AnyFilter {
          using F = std::decay_t<decltype(x.masks.front())>;
          if (auto p = std::get_if<F>(&v->f)) return quasi_subdivide(x, levels, *p);
          // Float data through an exact scheme: run the scheme in floating point.
          return quasi_subdivide(to_float(x), levels, std::visit([](const auto& w) { return to_float(w); }, v->f));
        },
        s->s)};
  });
}

qsub_status qsub_scheme_combined_mask(const qsub_scheme* s, qsub_filter** out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    *out = new qsub_filter{std::visit([](const auto& x) -> AnyFilter { return combined_mask(x); }, s->s)};
  });
}

qsub_status qsub_analyze_json(const qsub_filter* a, int M, int max_sr, const char* symmetry, const char* center,
                              char** out) {
  return guard([&] {
    need(a, "mask");
    need(out, "out");
    AnalyzeOptions opt;
    opt.dilation = M;
    if (max_sr >= 0) opt.max_sr = max_sr;
    if (symmetry) opt.symmetry = symmetry;
    if (center) {
      if (!symmetry) fail(ErrorCode::invalid_argument, "a symmetry center needs a symmetry group");
      std::string c(center);
      std::size_t pos = 0;
      while (pos <= c.size()) {
        auto comma = c.find(',', pos);
        if (comma == std::string::npos) comma = c.size();
        opt.center.push_back(parse_rational(c.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      if (static_cast<int>(opt.center.size()) != dim_of(a->f))
        fail(ErrorCode::invalid_dimension, "center has wrong dimension");
    }
    std::string text;
    for (const auto& line : analyze_lines(a->f, opt)) text += line.dump() + "\n";
    *out = dup_string(text);
  });
}

qsub_status qsub_certify_json(const qsub_scheme* s, int order, int level, char** out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    auto rep = std::visit([&](const auto& x) { return certify_cm(x, order, level); }, s->s);
    *out = dup_string(to_json(rep).dump(2) + "\n");
  });
}

qsub_status qsub_convergence_json(const qsub_scheme* s, int order, int reference_level, char** out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    auto rep = std::visit([&](const auto& x) { return convergence_residuals(x, order, reference_level); }, s->s);
    *out = dup_string(to_json(rep).dump(2) + "\n");
  });
}

qsub_status qsub_family_ids(char** out) {
  return guard([&] {
    need(out, "out");
    std::string t;
    for (const auto& id : builtin_family_ids()) t += id + "\n";
    *out = dup_string(t);
  });
}

qsub_status qsub_example_ids(char** out) {
  return guard([&] {
    need(out, "out");
    std::string t;
    for (const auto& id : reference_example_ids()) t += id + "\n";
    *out = dup_string(t);
  });
}

qsub_status qsub_construct(const char* family_id, const char* family_text, const char* const* fixes, size_t nfix,
                           const char* const* starts, size_t nstart, char** json_out, qsub_scheme** scheme_out) {
  return guard([&] {
    need(json_out, "json_out");
    need(scheme_out, "scheme_out");
    if ((family_id == nullptr) == (family_text == nullptr))
      fail(ErrorCode::invalid_argument, "give exactly one of a family id and a family description");
    MaskFamily fam = family_id ? builtin_family(family_id) : parse_family(family_text);
    std::map<std::string, AffineExpr> fixed;
    for (size_t i = 0; i < nfix; ++i) {
      auto [name, expr] = split_assignment(fixes[i]);
      if (!fixed.emplace(name, parse_affine(expr)).second)
        fail(ErrorCode::invalid_parameters, "parameter '" + name + "' fixed twice");
    }
    std::map<std::string, double> start;
    for (size_t i = 0; i < nstart; ++i) {
      auto [name, value] = split_assignment(starts[i]);
      start[name] = parse_double(value);
    }

    bool all_exact = true;
    for (const auto& p : fam.params) {
      auto it = fixed.find(p);
      if (it == fixed.end() || !it->second.is_constant()) all_exact = false;
    }

    Json j = {{"family", fam.id}, {"params_order", fam.params}};
    if (all_exact) {
      // Every parameter given exactly: evaluate in rationals and report the residual.
      std::vector<Rational> vals;
      for (const auto& p : fam.params) vals.push_back(fixed.at(p).constant);
      auto res = interpolatory_residual(fam, vals);
      Rational worst = 0;
      for (const auto& r : res) worst = std::max(worst, Rational(abs(r)));
      Json exact = Json::object();
      for (std::size_t i = 0; i < vals.size(); ++i) exact[fam.params[i]] = format_rational(vals[i]);
      if (worst != 0)
        fail(ErrorCode::invalid_parameters, "fixed parameters do not give an interpolatory scheme (residual " +
                                                 format_rational(worst) + ")");
      j["exact_params"] = exact;
      j["residual_inf"] = 0.0;
      j["interpolatory"] = true;
      *scheme_out = new qsub_scheme{make_scheme(fam.evaluate(vals), fam.dilation)};
    } else {
      SolveResult r = solve_parameters(fam, fixed, start);
      j["solve"] = to_json(r);
      j["interpolatory"] = true;
      *scheme_out = new qsub_scheme{make_scheme(fam.evaluate(r.params), fam.dilation)};
    }
    *json_out = dup_string(j.dump(2) + "\n");
  });
}

qsub_status qsub_verify_example(const char* id, char** json_out, qsub_scheme** scheme_out) {
  return guard([&] {
    need(id, "id");
    need(json_out, "json_out");
    ExampleReport rep = verify_reference_example(id);
    if (scheme_out) {
      const int M = rep.smoothness.dilation;
      *scheme_out = new qsub_scheme{scheme_of(rep.masks, M)};
    }
    *json_out = dup_string(to_json(rep).dump(2) + "\n");
  });
}

qsub_status qsub_polynomial_roots(const double* coeffs, size_t count, double* re, double* im) {
  return guard([&] {
    need(re, "re");
    need(im, "im");
    auto roots = polynomial_roots(read_coeffs(coeffs, count));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      re[i] = roots[i].real();
      im[i] = roots[i].imag();
    }
  });
}

qsub_status qsub_polynomial_root_near(const double* coeffs, size_t count, double guess, double* out) {
  return guard([&] {
    need(out, "out");
    *out = real_root_near(read_coeffs(coeffs, count), guess);
  });
}

qsub_status qsub_cascade(const qsub_scheme* s, int level, const int* mu, const qsub_filter* v, qsub_grid** out) {
  return guard([&] {
    need(s, "scheme");
    need(out, "out");
    *out = new qsub_grid{std::visit(
        [&](const auto& x) {
          MultiIndex m = read_index(mu, x.dim());
          using F = std::decay_t<decltype(x.masks.front())>;
          if (!v) return cascade_samples(x, level, m);
          if (auto p = std::get_if<F>(&v->f)) return cascade_samples(x, level, m, p);
          auto fs = to_float(x);
          auto fv = std::visit([](const auto& w) { return to_float(w); }, v->f);
          return cascade_samples(fs, level, m, &fv);
        },
        s->s)};
  });
}

void qsub_grid_free(qsub_grid* g) { delete g; }

qsub_status qsub_grid_dim(const qsub_grid* g, int* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = g->g.dim;
  });
}

qsub_status qsub_grid_level(const qsub_grid* g, int* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = g->g.level;
  });
}

qsub_status qsub_grid_size(const qsub_grid* g, size_t* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = g->g.values.size();
  });
}

qsub_status qsub_grid_box(const qsub_grid* g, int* lo, int* hi) {
  return guard([&] {
    need(g, "grid");
    need(lo, "lo");
    need(hi, "hi");
    if (g->g.box.empty()) return;
    for (int i = 0; i < g->g.dim; ++i) {
      lo[i] = g->g.box.lo()[static_cast<std::size_t>(i)];
      hi[i] = g->g.box.hi()[static_cast<std::size_t>(i)];
    }
  });
}

qsub_status qsub_grid_value(const qsub_grid* g, const int* k, double* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = g->g.at(read_index(k, g->g.dim));
  });
}

qsub_status qsub_grid_csv(const qsub_grid* g, char** out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = dup_string(export_csv(g->g));
  });
}

qsub_status qsub_grid_parse_csv(const char* text, int level, int M, qsub_grid** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new qsub_grid{parse_grid_csv(text, level, M)};
  });
}

qsub_status qsub_grid_pgm(const qsub_grid* g, qsub_normalize mode, unsigned char** data, size_t* len) {
  return guard([&] {
    need(g, "grid");
    need(data, "data");
    need(len, "len");
    std::string bytes = export_pgm(g->g, mode == QSUB_NORMALIZE_SYMMETRIC ? Normalize::symmetric : Normalize::minmax);
    auto* p = static_cast<unsigned char*>(std::malloc(bytes.size()));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, bytes.data(), bytes.size());
    *data = p;
    *len = bytes.size();
  });
}

qsub_status qsub_write_file(const char* path, const unsigned char* data, size_t len) {
  return guard([&] {
    need(path, "path");
    if (len) need(data, "data");
    write_text_file(path, std::string_view(reinterpret_cast<const char*>(data), len));
  });
}

}  // extern "C"
