#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/cascade.hpp"
#include "core/reference_examples.hpp"
#include "core/solver.hpp"

namespace qsub {

using Json = nlohmann::ordered_json;

Json to_json(const Sm2Result& r);
Json to_json(const SmInfBound& b);
Json to_json(const SmoothnessReport& r);
Json to_json(const ExampleReport& r);
Json to_json(const SolveResult& r);
Json to_json(const ConvergenceReport& r);

struct AnalyzeOptions {
  int dilation = 2;
  std::optional<int> max_sr;
  std::string symmetry;               // empty: detect d4/d6/point about the origin
  std::vector<Rational> center;       // empty: origin
};

// One JSON object per quantity: sum_rules, interpolatory, symmetry, sm2, sm_inf_from_sm2.
std::vector<Json> analyze_lines(const AnyFilter& mask, const AnalyzeOptions& opt);

}  // namespace qsub
