#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qsub {

// Integer point of Z^d. Also used for exponents mu in N_0^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim, int fill = 0) : c_(dim, fill) {}
  MultiIndex(std::initializer_list<int> c) : c_(c) {}
  explicit MultiIndex(std::vector<int> c) : c_(std::move(c)) {}
  explicit MultiIndex(std::span<const int> c) : c_(c.begin(), c.end()) {}

  std::size_t size() const { return c_.size(); }
  int dim() const { return static_cast<int>(c_.size()); }
  int operator[](std::size_t i) const { return c_[i]; }
  int& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<int>& coords() const { return c_; }

  int total() const {
    int s = 0;
    for (int v : c_) s += v;
    return s;
  }
  bool is_zero() const {
    for (int v : c_)
      if (v != 0) return false;
    return true;
  }
  bool nonnegative() const {
    for (int v : c_)
      if (v < 0) return false;
    return true;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  MultiIndex& operator+=(const MultiIndex& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  MultiIndex& operator-=(const MultiIndex& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
  friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }
  friend MultiIndex operator-(MultiIndex a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend MultiIndex operator*(int s, MultiIndex a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

 private:
  std::vector<int> c_;
};

inline MultiIndex unit_vector(int dim, int j) {
  MultiIndex e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(j)] = 1;
  return e;
}

inline std::string to_string(const MultiIndex& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

// All mu in N_0^d with |mu| == order, in lexicographic descending order of the first coordinate
// ((2,0), (1,1), (0,2) for d = 2).
inline std::vector<MultiIndex> exponents_of_order(int dim, int order) {
  std::vector<MultiIndex> out;
  if (dim <= 0 || order < 0) return out;
  MultiIndex cur(static_cast<std::size_t>(dim), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == dim - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, order);
  return out;
}

// All mu with |mu| < order.
inline std::vector<MultiIndex> exponents_below(int dim, int order) {
  std::vector<MultiIndex> out;
  for (int j = 0; j < order; ++j)
    for (auto& mu : exponents_of_order(dim, j)) out.push_back(mu);
  return out;
}

// Integer points of [0, M-1]^d, i.e. the coset representatives Gamma_M.
inline std::vector<MultiIndex> coset_representatives(int dim, int M) {
  std::vector<MultiIndex> out;
  MultiIndex g(static_cast<std::size_t>(dim), 0);
  for (;;) {
    out.push_back(g);
    int i = dim - 1;
    while (i >= 0 && g[static_cast<std::size_t>(i)] == M - 1) g[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++g[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace qsub
