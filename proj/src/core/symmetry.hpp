#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/filter.hpp"

namespace qsub {

// Integer d x d matrix, row-major.
struct IntMatrix {
  int dim = 0;
  std::vector<int> a;

  int at(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
  MultiIndex apply(const MultiIndex& k) const {
    MultiIndex out(static_cast<std::size_t>(dim), 0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[static_cast<std::size_t>(i)] += at(i, j) * k[static_cast<std::size_t>(j)];
    return out;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);

struct SymmetryGroup {
  std::string name;
  int dim = 0;
  std::vector<IntMatrix> elements;
};

SymmetryGroup d4_group();
SymmetryGroup d6_group();
SymmetryGroup point_group(int dim);  // {I, -I}
SymmetryGroup group_by_name(const std::string& name, int dim);
bool is_closed(const SymmetryGroup& g);

// Center h in (1/2) Z^d.
std::vector<Rational> origin(int dim);

// a(E(k - h) + h) == a(k) for every E in G (float: |difference| <= tol * max|a|).
template <class T>
bool check_symmetry(const BasicFilter<T>& a, const SymmetryGroup& g, const std::vector<Rational>& center,
                    double tol = 1e-12) {
  if (g.dim != a.dim() || static_cast<int>(center.size()) != a.dim())
    fail(ErrorCode::invalid_dimension, "symmetry group, center and filter dimensions differ");
  MultiIndex h2(static_cast<std::size_t>(a.dim()));
  for (std::size_t i = 0; i < center.size(); ++i) {
    Rational twice = 2 * center[i];
    if (twice.get_den() != 1) fail(ErrorCode::invalid_argument, "symmetry center must lie in (1/2) Z^d");
    h2[i] = static_cast<int>(twice.get_num().get_si());
  }
  const double scale_tol = tol * max_abs(a);
  for (const auto& e : g.elements) {
    // E(k-h)+h = Ek + t with 2t = (I-E)(2h)
    MultiIndex t2 = h2 - e.apply(h2);
    MultiIndex t(t2.size());
    for (std::size_t i = 0; i < t2.size(); ++i) {
      if (t2[i] % 2 != 0) return false;
      t[i] = t2[i] / 2;
    }
    bool ok = true;
    a.for_each_nonzero([&](const MultiIndex& k, const T& v) {
      if (!ok) return;
      T w = a(e.apply(k) + t);
      if constexpr (std::is_same_v<T, Rational>)
        ok = (w == v);
      else
        ok = std::fabs(w - v) <= scale_tol;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace qsub
