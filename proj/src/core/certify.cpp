#include "core/certify.hpp"

#include <algorithm>
#include <cmath>

namespace qsub {

const char* bound_method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::coset_sum: return "coset-sum";
    case BoundMethod::sm2: return "sm2";
    case BoundMethod::none: break;
  }
  return "none";
}

template <class T>
std::vector<std::string> detect_symmetry(const BasicFilter<T>& a) {
  std::vector<std::string> out;
  if (a.dim() == 2) {
    if (check_symmetry(a, d4_group(), origin(2))) out.push_back("d4");
    if (check_symmetry(a, d6_group(), origin(2))) out.push_back("d6");
  }
  if (check_symmetry(a, point_group(a.dim()), origin(a.dim()))) out.push_back("point");
  return out;
}

template <class T>
SmoothnessReport certify_cm(const Scheme<T>& s, int m, int n) {
  if (m < 0) fail(ErrorCode::invalid_argument, "order must be >= 0");
  if (n < 1) fail(ErrorCode::invalid_argument, "estimate level must be >= 1");
  SmoothnessReport r;
  r.dim = s.dim();
  r.dilation = s.dilation;
  r.period = s.period();
  r.combined_dilation = combined_dilation(s.dilation, s.period());
  r.requested_order = m;

  for (const auto& al : s.masks) {
    r.mask_sum_rules.push_back(sum_rule_order(al, s.dilation));
    r.mask_symmetry.push_back(detect_symmetry(al));
  }
  const auto a = combined_mask(s);
  const int MR = r.combined_dilation;
  r.combined_sum_rules = sum_rule_order(a, MR);
  r.interpolatory = is_interpolatory(a, MR);
  r.symmetry = detect_symmetry(a);

  r.sm2 = sm2(a, MR, r.combined_sum_rules);
  r.sm_inf_from_sm2 = sm_inf_from_sm2(r.sm2.value, r.dim);
  r.sm_inf_lower = r.sm_inf_from_sm2;
  r.method = BoundMethod::sm2;

  if (r.combined_sum_rules >= 1) {
    std::string group = "none";
    for (const char* g : {"d4", "d6"})
      if (std::find(r.symmetry.begin(), r.symmetry.end(), g) != r.symmetry.end()) {
        group = g;
        break;
      }
    try {
      auto specs = required_difference_specs(group, r.combined_sum_rules, r.dim);
      r.coset_bound = sm_inf_lower(a, MR, specs, n);
      if (r.coset_bound->value > r.sm_inf_lower) {
        r.sm_inf_lower = r.coset_bound->value;
        r.method = BoundMethod::coset_sum;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_divisible && e.code() != ErrorCode::level_too_large) throw;
      r.coset_bound_error = e.what();
    }
  }

  // bounds come from floating-point spectral radii; equality up to round-off is not "> k"
  constexpr double margin = 1e-9;
  const int min_sr = *std::min_element(r.mask_sum_rules.begin(), r.mask_sum_rules.end());
  for (int k = m; k >= 0; --k)
    if (k < min_sr && k + margin < r.sm_inf_lower) {
      r.verdict = k;
      break;
    }
  r.certified = r.verdict == m;

  std::string why;
  if (min_sr <= m)
    why = "sum rule order " + std::to_string(min_sr) + " of some mask does not exceed " + std::to_string(m);
  if (!(r.sm_inf_lower > m + margin)) {
    if (!why.empty()) why += "; ";
    why += "smoothness lower bound " + format_double(r.sm_inf_lower) + " does not exceed " + std::to_string(m);
  }
  r.explanation = r.certified ? "C^" + std::to_string(m) + " certified by " + bound_method_name(r.method) +
                                    " bound " + format_double(r.sm_inf_lower)
                              : "C^" + std::to_string(m) + " not certified: " + why;
  return r;
}

template SmoothnessReport certify_cm<Rational>(const Scheme<Rational>&, int, int);
template SmoothnessReport certify_cm<double>(const Scheme<double>&, int, int);
template std::vector<std::string> detect_symmetry<Rational>(const RationalFilter&);
template std::vector<std::string> detect_symmetry<double>(const FloatFilter&);

}  // namespace qsub
