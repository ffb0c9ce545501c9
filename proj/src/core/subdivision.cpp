#include "core/subdivision.hpp"

namespace qsub {

template struct Scheme<Rational>;
template struct Scheme<double>;

}  // namespace qsub
