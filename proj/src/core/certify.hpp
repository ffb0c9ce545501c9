#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/smoothness.hpp"
#include "core/subdivision.hpp"
#include "core/symmetry.hpp"

namespace qsub {

enum class BoundMethod { none, coset_sum, sm2 };
const char* bound_method_name(BoundMethod m);

struct SmoothnessReport {
  int dim = 0;
  int dilation = 2;
  int period = 1;
  int combined_dilation = 2;
  std::vector<int> mask_sum_rules;
  int combined_sum_rules = 0;
  bool interpolatory = false;
  std::vector<std::string> symmetry;  // groups fixing the combined mask about 0
  std::vector<std::vector<std::string>> mask_symmetry;
  Sm2Result sm2;
  double sm_inf_from_sm2 = 0;
  std::optional<SmInfBound> coset_bound;
  std::string coset_bound_error;
  double sm_inf_lower = 0;
  BoundMethod method = BoundMethod::none;
  int requested_order = 0;
  int verdict = -1;  // largest certified order <= requested, -1 if none
  bool certified = false;
  std::string explanation;
};

// Checks sr(a_l, M) > m for all l and sm_inf(a, M^r) > m for the combined mask.
template <class T>
SmoothnessReport certify_cm(const Scheme<T>& s, int m, int n);

// Symmetry groups (d4, d6, point) that fix the filter about the origin.
template <class T>
std::vector<std::string> detect_symmetry(const BasicFilter<T>& a);

}  // namespace qsub
