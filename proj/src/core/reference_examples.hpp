#pragma once

#include <string>
#include <vector>

#include "core/certify.hpp"
#include "core/filter_io.hpp"

namespace qsub {

struct ExampleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double observed = 0;
  double expected = 0;
  double tolerance = 0;
};

struct ExampleReport {
  std::string id;
  std::string family;
  std::vector<std::string> param_names;
  std::vector<double> params;
  std::vector<std::string> exact_params;  // empty for float examples
  std::vector<AnyFilter> masks;
  SmoothnessReport smoothness;
  std::vector<ExampleCheck> checks;    // must all pass
  std::vector<ExampleCheck> findings;  // comparisons against printed tables; informational
  bool passed = false;
};

std::vector<std::string> reference_example_ids();  // ex3, ex1, ex4a, ex4b, ex2a, ex2b

// Regenerates the example masks from their parameter formulas and checks every published quantity.
ExampleReport verify_reference_example(const std::string& id);

// The example scheme alone (no checks); rational where the parameters are rational.
AnyFilter reference_example_mask(const std::string& id, int index);

}  // namespace qsub
