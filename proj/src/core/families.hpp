#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/filter.hpp"

namespace qsub {

// Masks a_1..a_r whose entries are affine in named parameters:
// a_l = base_l + sum_j params_j * coeff_{l,j}.
struct MaskFamily {
  std::string id;
  int dim = 2;
  int dilation = 2;
  int ring = 1;                // stencil ring count, sets the residual window
  std::string symmetry;        // "d4", "d6" or empty
  std::vector<std::string> params;
  std::vector<RationalFilter> base;
  std::vector<std::vector<RationalFilter>> coeff;

  int period() const { return static_cast<int>(base.size()); }
  int param_index(const std::string& name) const;

  template <class T>
  std::vector<BasicFilter<T>> evaluate(const std::vector<T>& values) const {
    if (values.size() != params.size())
      fail(ErrorCode::invalid_parameters, "family " + id + " expects " + std::to_string(params.size()) + " parameters");
    std::vector<BasicFilter<T>> out;
    for (std::size_t l = 0; l < base.size(); ++l) {
      BasicFilter<T> a = convert<T>(base[l]);
      for (std::size_t j = 0; j < params.size(); ++j)
        if (!coeff[l][j].empty()) a = a + scale(convert<T>(coeff[l][j]), values[j]);
      out.push_back(std::move(a));
    }
    return out;
  }

  template <class T>
  static BasicFilter<T> convert(const RationalFilter& f) {
    if constexpr (std::is_same_v<T, Rational>)
      return f;
    else
      return to_float(f);
  }
};

std::vector<std::string> builtin_family_ids();
MaskFamily builtin_family(const std::string& id);

// Text format:
//   qsubfamily 1
//   dim 2
//   dilation 2
//   ring 1
//   params t1 t2
//   mask
//   <k1> ... <kd> <affine expression>
//   mask
//   ...
MaskFamily parse_family(std::string_view text);

// Eliminates parameters so every mask sums to 1 and has sum rules of the given order; exact.
MaskFamily impose_sum_rules(const MaskFamily& f, int order);

}  // namespace qsub
