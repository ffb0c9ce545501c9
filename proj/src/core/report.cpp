#include "core/report.hpp"

#include <cmath>

namespace qsub {

namespace {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? Json("inf") : x < 0 ? Json("-inf") : Json("nan");
}

Json spec_json(const DifferenceSpec& s) {
  Json a = Json::array();
  for (const auto& f : s) a.push_back({{"direction", f.direction.coords()}, {"order", f.order}});
  return a;
}

}  // namespace

Json to_json(const Sm2Result& r) {
  return {{"value", number(r.value)},
          {"sum_rules", r.sum_rules},
          {"spectral_radius", number(r.spectral_radius)},
          {"matrix_size", r.matrix_size},
          {"subspace_dim", r.subspace_dim}};
}

Json to_json(const SmInfBound& b) {
  Json specs = Json::array();
  for (std::size_t i = 0; i < b.specs.size(); ++i)
    specs.push_back({{"spec", to_string(b.specs[i])}, {"factors", spec_json(b.specs[i])}, {"rho", number(b.rho[i])}});
  return {{"value", number(b.value)}, {"level", b.level}, {"specs", specs}};
}

Json to_json(const SmoothnessReport& r) {
  Json j = {{"dim", r.dim},
            {"dilation", r.dilation},
            {"period", r.period},
            {"combined_dilation", r.combined_dilation},
            {"mask_sum_rules", r.mask_sum_rules},
            {"combined_sum_rules", r.combined_sum_rules},
            {"interpolatory", r.interpolatory},
            {"symmetry", r.symmetry},
            {"mask_symmetry", r.mask_symmetry},
            {"sm2", to_json(r.sm2)},
            {"sm_inf_from_sm2", number(r.sm_inf_from_sm2)}};
  j["coset_bound"] = r.coset_bound ? to_json(*r.coset_bound) : Json(nullptr);
  if (!r.coset_bound_error.empty()) j["coset_bound_error"] = r.coset_bound_error;
  j["sm_inf_lower"] = number(r.sm_inf_lower);
  j["method"] = bound_method_name(r.method);
  j["requested_order"] = r.requested_order;
  j["verdict"] = r.verdict;
  j["certified"] = r.certified;
  j["explanation"] = r.explanation;
  return j;
}

Json to_json(const ExampleReport& r) {
  auto checks = [](const std::vector<ExampleCheck>& cs) {
    Json a = Json::array();
    for (const auto& c : cs)
      a.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"observed", number(c.observed)},
                   {"expected", number(c.expected)},
                   {"tolerance", number(c.tolerance)},
                   {"detail", c.detail}});
    return a;
  };
  Json params = Json::object();
  for (std::size_t i = 0; i < r.param_names.size(); ++i) {
    Json p = {{"value", number(r.params[i])}};
    if (i < r.exact_params.size()) p["exact"] = r.exact_params[i];
    params[r.param_names[i]] = p;
  }
  return {{"id", r.id},         {"family", r.family},           {"params", params},
          {"passed", r.passed}, {"smoothness", to_json(r.smoothness)}, {"checks", checks(r.checks)},
          {"findings", checks(r.findings)}};
}

Json to_json(const SolveResult& r) {
  Json vars = Json::object();
  for (std::size_t i = 0; i < r.variables.size(); ++i) vars[r.variables[i]] = r.variable_values[i];
  return {{"variables", vars},
          {"params", r.params},
          {"residual_inf", number(r.residual_inf)},
          {"iterations", r.iterations},
          {"jacobian_rank", r.jacobian_rank},
          {"nullspace_dim", r.nullspace_dim}};
}

Json to_json(const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back({{"mu", row.mu.coords()}, {"level", row.level}, {"residual", number(row.residual)}});
  Json series = Json::array();
  for (const auto& s : r.series) series.push_back({{"mu", s.mu.coords()}, {"slope", number(s.slope)}, {"decays", s.decays}});
  return {{"reference_level", r.reference_level}, {"rows", rows}, {"series", series}};
}

std::vector<Json> analyze_lines(const AnyFilter& mask, const AnalyzeOptions& opt) {
  require_dilation(opt.dilation);
  return std::visit(
      [&](const auto& a) {
        using T = typename std::decay_t<decltype(a)>::value_type;
        std::vector<Json> out;
        const int M = opt.dilation;
        const int sr = sum_rule_order(a, M, opt.max_sr);
        out.push_back({{"quantity", "sum_rules"}, {"value", sr}, {"capped", opt.max_sr && sr >= *opt.max_sr}});
        out.push_back({{"quantity", "interpolatory"}, {"value", is_interpolatory(a, M)}});
        if (opt.symmetry.empty()) {
          out.push_back({{"quantity", "symmetry"}, {"center", "origin"}, {"groups", detect_symmetry(a)}});
        } else {
          std::vector<Rational> c = opt.center.empty() ? origin(a.dim()) : opt.center;
          Json cj = Json::array();
          for (const auto& x : c) cj.push_back(format_rational(x));
          bool ok = check_symmetry(a, group_by_name(opt.symmetry, a.dim()), c);
          out.push_back({{"quantity", "symmetry"}, {"group", opt.symmetry}, {"center", cj}, {"value", ok}});
        }
        Sm2Result s = sm2<T>(a, M, sr);
        Json j = to_json(s);
        j["quantity"] = "sm2";
        out.push_back(j);
        out.push_back({{"quantity", "sm_inf_from_sm2"}, {"value", number(sm_inf_from_sm2(s.value, a.dim()))}});
        return out;
      },
      mask);
}

}  // namespace qsub
