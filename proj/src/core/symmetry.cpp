#include "core/symmetry.hpp"

namespace qsub {

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix z{x.dim, std::vector<int>(x.a.size(), 0)};
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j)
      for (int k = 0; k < x.dim; ++k) z.a[static_cast<std::size_t>(i * x.dim + j)] += x.at(i, k) * y.at(k, j);
  return z;
}

namespace {

SymmetryGroup with_negatives(std::string name, const std::vector<std::array<int, 4>>& base) {
  SymmetryGroup g{std::move(name), 2, {}};
  for (const auto& m : base) {
    g.elements.push_back({2, {m[0], m[1], m[2], m[3]}});
    g.elements.push_back({2, {-m[0], -m[1], -m[2], -m[3]}});
  }
  return g;
}

}  // namespace

SymmetryGroup d4_group() {
  return with_negatives("d4", {{1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, 1, -1, 0}});
}

SymmetryGroup d6_group() {
  return with_negatives("d6", {{1, 0, 0, 1}, {0, 1, 1, 0}, {-1, 1, 0, 1}, {1, 0, 1, -1}, {0, 1, -1, 1}, {1, -1, 1, 0}});
}

SymmetryGroup point_group(int dim) {
  SymmetryGroup g{"point", dim, {}};
  IntMatrix id{dim, std::vector<int>(static_cast<std::size_t>(dim * dim), 0)};
  for (int i = 0; i < dim; ++i) id.a[static_cast<std::size_t>(i * dim + i)] = 1;
  IntMatrix neg = id;
  for (auto& v : neg.a) v = -v;
  g.elements = {id, neg};
  return g;
}

SymmetryGroup group_by_name(const std::string& name, int dim) {
  if (name == "point") return point_group(dim);
  if (name == "d4" || name == "d6") {
    if (dim != 2) fail(ErrorCode::invalid_dimension, name + " acts on Z^2 only");
    return name == "d4" ? d4_group() : d6_group();
  }
  fail(ErrorCode::invalid_argument, "unknown symmetry group '" + name + "'");
}

bool is_closed(const SymmetryGroup& g) {
  for (const auto& x : g.elements)
    for (const auto& y : g.elements) {
      auto z = x * y;
      bool found = false;
      for (const auto& w : g.elements) found = found || (w == z);
      if (!found) return false;
    }
  return true;
}

std::vector<Rational> origin(int dim) { return std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)); }

}  // namespace qsub
