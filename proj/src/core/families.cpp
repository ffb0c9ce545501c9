#include "core/families.hpp"

#include <functional>
#include <sstream>

#include "core/affine.hpp"

namespace qsub {

namespace {

using R = Rational;
using Generator = std::function<std::vector<RationalFilter>(const std::vector<R>&)>;

// rows[0] is the top row (largest y), columns start at x0.
RationalFilter grid(const std::vector<std::vector<R>>& rows, int x0, int y_top) {
  std::vector<std::pair<MultiIndex, R>> e;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      e.push_back({MultiIndex{x0 + static_cast<int>(j), y_top - static_cast<int>(i)}, rows[i][j]});
  return RationalFilter::from_entries(2, e);
}

RationalFilter one_plus(const MultiIndex& h) { return delta<R>(2) + monomial<R>(h); }

RationalFilter product(std::initializer_list<RationalFilter> fs) {
  RationalFilter p = delta<R>(2);
  for (const auto& f : fs) p = convolve(p, f);
  return p;
}

RationalFilter power(const RationalFilter& f, int n) {
  RationalFilter p = delta<R>(2);
  for (int i = 0; i < n; ++i) p = convolve(p, f);
  return p;
}

const MultiIndex kE1{1, 0}, kE2{0, 1}, kDiag{-1, -1};

// (1/16) z^{(-1,-1)} (1+z1)^2 (1+z2)^2 q, q with edge value `edge` and corner value `corner`.
RationalFilter d4_ring1_mask(const R& edge, const R& corner) {
  R c = 1 - 4 * edge - 4 * corner;
  auto q = grid({{corner, edge, corner}, {edge, c, edge}, {corner, edge, corner}}, -1, 1);
  return scale(product({monomial<R>(MultiIndex{-1, -1}), power(one_plus(kE1), 2), power(one_plus(kE2), 2), q}),
               R(1, 16));
}

// (1/8) (1+z1)(1+z2)(1+z1^-1 z2^-1) (t p + delta)
RationalFilter d6_ring1_mask(const R& t) {
  auto p = RationalFilter::from_entries(2, {{{1, 0}, t}, {{-1, 0}, t}, {{0, 1}, t}, {{0, -1}, t}, {{1, 1}, t},
                                            {{-1, -1}, t}, {{0, 0}, 1 - 6 * t}});
  return scale(product({one_plus(kE1), one_plus(kE2), one_plus(kDiag), p}), R(1, 8));
}

RationalFilter d4_ring2_mask(const RationalFilter& p) {
  return scale(product({monomial<R>(MultiIndex{-2, -2}), power(one_plus(kE1), 4), power(one_plus(kE2), 4), p}),
               R(1, 256));
}

RationalFilter d4_ring2_p1(const R& t1, const R& t2, const R& t3, const R& t4, const R& t5) {
  R c = 1 - 4 * t1 - 4 * t5 - 4 * t3 - 8 * t4 - 4 * t2;
  return grid({{t5, t4, t3, t4, t5}, {t4, t2, t1, t2, t4}, {t3, t1, c, t1, t3}, {t4, t2, t1, t2, t4}, {t5, t4, t3, t4, t5}},
              -2, 2);
}

RationalFilter d4_ring2_p2(const R& t6, const R& t7, const R& t8) {
  R c = 1 - 4 * t6 - 4 * t7 - 4 * t8;
  R z = 0;
  return grid({{z, z, t8, z, z}, {z, t7, t6, t7, z}, {t8, t6, c, t6, t8}, {z, t7, t6, t7, z}, {z, z, t8, z, z}}, -2, 2);
}

RationalFilter d6_ring2_mask(const R& t1, const R& t2, const R& t3) {
  R c = 1 - 6 * (t1 + t2 + t3);
  R z = 0;
  auto g = grid({{z, z, t3, t2, t3}, {z, t2, t1, t1, t2}, {t3, t1, c, t1, t3}, {t2, t1, t1, t2, z}, {t3, t2, t3, z, z}},
                -2, 2);
  return scale(product({power(one_plus(kE1), 2), power(one_plus(kE2), 2), power(one_plus(kDiag), 2), g}), R(1, 64));
}

MaskFamily from_generator(std::string id, int ring, std::string sym, std::vector<std::string> names, const Generator& gen) {
  MaskFamily f;
  f.id = std::move(id);
  f.ring = ring;
  f.symmetry = std::move(sym);
  f.params = std::move(names);
  std::vector<R> zero(f.params.size(), R(0));
  f.base = gen(zero);
  f.coeff.assign(f.base.size(), {});
  for (std::size_t j = 0; j < f.params.size(); ++j) {
    auto e = zero;
    e[j] = 1;
    auto masks = gen(e);
    for (std::size_t l = 0; l < masks.size(); ++l) f.coeff[l].push_back(masks[l] - f.base[l]);
  }
  return f;
}

}  // namespace

int MaskFamily::param_index(const std::string& name) const {
  for (std::size_t j = 0; j < params.size(); ++j)
    if (params[j] == name) return static_cast<int>(j);
  return -1;
}

std::vector<std::string> builtin_family_ids() { return {"d4-ring1", "d6-ring1", "d4-ring2", "d6-ring2"}; }

MaskFamily builtin_family(const std::string& id) {
  if (id == "d4-ring1")
    return from_generator(id, 1, "d4", {"t1", "t2", "t3", "t4"}, [](const std::vector<R>& t) {
      return std::vector<RationalFilter>{d4_ring1_mask(t[0], t[1]), d4_ring1_mask(t[2], t[3])};
    });
  if (id == "d6-ring1")
    return from_generator(id, 1, "d6", {"t1", "t2"}, [](const std::vector<R>& t) {
      return std::vector<RationalFilter>{d6_ring1_mask(t[0]), d6_ring1_mask(t[1])};
    });
  if (id == "d4-ring2")
    return from_generator(id, 2, "d4", {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"}, [](const std::vector<R>& t) {
      return std::vector<RationalFilter>{d4_ring2_mask(d4_ring2_p1(t[0], t[1], t[2], t[3], t[4])),
                                         d4_ring2_mask(d4_ring2_p2(t[5], t[6], t[7]))};
    });
  if (id == "d6-ring2")
    return from_generator(id, 2, "d6", {"t1", "t2", "t3", "t4", "t5", "t6"}, [](const std::vector<R>& t) {
      return std::vector<RationalFilter>{d6_ring2_mask(t[0], t[1], t[2]), d6_ring2_mask(t[3], t[4], t[5])};
    });
  fail(ErrorCode::invalid_argument, "unknown family '" + id + "'");
}

MaskFamily parse_family(std::string_view text) {
  MaskFamily f;
  f.id = "generic";
  f.symmetry.clear();
  bool magic = false, have_params = false;
  std::vector<std::vector<std::pair<MultiIndex, AffineExpr>>> masks;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto err = [&](const std::string& what) { fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what); };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!magic) {
      if (tok.size() != 2 || tok[0] != "qsubfamily" || tok[1] != "1") err("expected 'qsubfamily 1'");
      magic = true;
    } else if (tok[0] == "dim" && tok.size() == 2) {
      f.dim = std::stoi(tok[1]);
      if (f.dim < 1) fail(ErrorCode::invalid_dimension, "dimension must be >= 1");
    } else if (tok[0] == "dilation" && tok.size() == 2) {
      f.dilation = std::stoi(tok[1]);
      require_dilation(f.dilation);
    } else if (tok[0] == "ring" && tok.size() == 2) {
      f.ring = std::stoi(tok[1]);
    } else if (tok[0] == "symmetry" && tok.size() == 2) {
      f.symmetry = tok[1];
    } else if (tok[0] == "params") {
      f.params.assign(tok.begin() + 1, tok.end());
      have_params = true;
    } else if (tok[0] == "mask" && tok.size() == 1) {
      masks.emplace_back();
    } else {
      if (masks.empty()) err("entry before 'mask'");
      if (static_cast<int>(tok.size()) < f.dim + 1) err("expected indices and an expression");
      MultiIndex k(static_cast<std::size_t>(f.dim));
      for (int i = 0; i < f.dim; ++i) {
        try {
          k[static_cast<std::size_t>(i)] = std::stoi(tok[static_cast<std::size_t>(i)]);
        } catch (const std::exception&) {
          err("bad index '" + tok[static_cast<std::size_t>(i)] + "'");
        }
      }
      std::string expr;
      for (std::size_t i = static_cast<std::size_t>(f.dim); i < tok.size(); ++i) expr += tok[i] + " ";
      for (const auto& [kk, e] : masks.back())
        if (kk == k) err("duplicate index " + to_string(k));
      masks.back().emplace_back(k, parse_affine(expr));
    }
  }
  if (!magic || !have_params || masks.empty()) fail(ErrorCode::parse_error, "incomplete family description");
  for (const auto& m : masks) {
    std::vector<std::pair<MultiIndex, R>> base;
    std::vector<std::vector<std::pair<MultiIndex, R>>> co(f.params.size());
    for (const auto& [k, e] : m) {
      base.emplace_back(k, e.constant);
      for (const auto& [name, c] : e.coeff) {
        int j = f.param_index(name);
        if (j < 0) fail(ErrorCode::parse_error, "unknown parameter '" + name + "'");
        co[static_cast<std::size_t>(j)].emplace_back(k, c);
      }
    }
    f.base.push_back(RationalFilter::from_entries(f.dim, base));
    f.coeff.emplace_back();
    for (const auto& c : co) f.coeff.back().push_back(RationalFilter::from_entries(f.dim, c));
  }
  return f;
}

MaskFamily impose_sum_rules(const MaskFamily& f, int order) {
  if (order < 0) fail(ErrorCode::invalid_argument, "order must be >= 0");
  const std::size_t np = f.params.size();
  const int d = f.dim;
  const R inv = rational_power(f.dilation, -d);
  std::vector<std::vector<R>> rows;  // [coeffs..., rhs]

  for (int l = 0; l < f.period(); ++l) {
    auto add_row = [&](const std::function<R(const RationalFilter&)>& L, const R& rhs) {
      std::vector<R> row(np + 1);
      for (std::size_t j = 0; j < np; ++j) row[j] = L(f.coeff[static_cast<std::size_t>(l)][j]);
      row[np] = rhs - L(f.base[static_cast<std::size_t>(l)]);
      rows.push_back(std::move(row));
    };
    add_row([](const RationalFilter& u) { return value_sum(u); }, R(1));
    for (const auto& mu : exponents_below(d, order))
      for (const auto& g : coset_representatives(d, f.dilation))
        add_row(
            [&](const RationalFilter& u) -> R {
              R part = 0;
              u.for_each_nonzero([&](const MultiIndex& k, const R& v) {
                bool in = true;
                for (std::size_t i = 0; i < k.size(); ++i) {
                  int r = k[i] % f.dilation;
                  if (r < 0) r += f.dilation;
                  in = in && r == g[i];
                }
                if (in) part += v * monomial_value<R>(k, mu);
              });
              return part - inv * moment(u, mu);
            },
            R(0));
  }

  // Reduced row echelon form.
  std::vector<int> pivot_of_col(np, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < np && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    R piv = rows[rank][c];
    for (auto& x : rows[rank]) x /= piv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || sgn(rows[i][c]) == 0) continue;
      R fct = rows[i][c];
      for (std::size_t j = 0; j <= np; ++j) rows[i][j] -= fct * rows[rank][j];
    }
    pivot_of_col[c] = static_cast<int>(rank++);
  }
  for (std::size_t i = rank; i < rows.size(); ++i)
    if (sgn(rows[i][np]) != 0) fail(ErrorCode::invalid_parameters, "sum rule constraints are inconsistent for this family");

  MaskFamily g = f;
  g.id = f.id + "+sr" + std::to_string(order);
  g.params.clear();
  for (std::size_t l = 0; l < static_cast<std::size_t>(f.period()); ++l) {
    g.base[l] = f.base[l];
    g.coeff[l].clear();
    for (std::size_t c = 0; c < np; ++c)
      if (pivot_of_col[c] >= 0) g.base[l] = g.base[l] + scale(f.coeff[l][c], rows[static_cast<std::size_t>(pivot_of_col[c])][np]);
  }
  for (std::size_t fc = 0; fc < np; ++fc) {
    if (pivot_of_col[fc] >= 0) continue;
    g.params.push_back(f.params[fc]);
    for (std::size_t l = 0; l < static_cast<std::size_t>(f.period()); ++l) {
      RationalFilter c = f.coeff[l][fc];
      for (std::size_t pc = 0; pc < np; ++pc)
        if (pivot_of_col[pc] >= 0)
          c = c - scale(f.coeff[l][pc], rows[static_cast<std::size_t>(pivot_of_col[pc])][fc]);
      g.coeff[l].push_back(c);
    }
  }
  return g;
}

}  // namespace qsub
