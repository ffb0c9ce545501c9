#include "core/filter.hpp"

namespace qsub {

std::string to_string(const DifferenceSpec& spec) {
  std::string s = "[";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i) s += ",";
    s += to_string(spec[i].direction) + "^" + std::to_string(spec[i].order);
  }
  return s + "]";
}

}  // namespace qsub
