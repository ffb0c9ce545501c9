#include "core/cascade.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qsub {

double SampleGrid::scale() const { return std::pow(static_cast<double>(dilation), -level); }

namespace {

SampleGrid grid_from(const FloatFilter& f, int level, int M, const MultiIndex& mu) {
  SampleGrid g;
  g.dim = f.dim();
  g.level = level;
  g.dilation = M;
  g.mu = mu;
  g.box = f.box();
  g.values = f.values();
  return g;
}

double scaled_power(int M, int e) { return std::pow(static_cast<double>(M), e); }

}  // namespace

template <class T>
SampleGrid cascade_samples(const Scheme<T>& s, int n, const MultiIndex& mu, const BasicFilter<T>* v) {
  if (n < 1) fail(ErrorCode::invalid_argument, "level must be >= 1");
  Scheme<double> fs = to_float(s);
  FloatFilter start = v ? to_float(*v) : delta<double>(s.dim());
  return grid_from(derivative_sequence(fs, mu, n, start), n, s.dilation, mu);
}

template <class T>
ConvergenceReport convergence_residuals(const Scheme<T>& s, int m, int n_max) {
  if (n_max < 2) fail(ErrorCode::invalid_argument, "reference level must be >= 2");
  if (m < 0) fail(ErrorCode::invalid_argument, "order must be >= 0");
  Scheme<double> fs = to_float(s);
  const int M = s.dilation;
  std::vector<MultiIndex> mus = exponents_below(s.dim(), m + 1);

  std::vector<FloatFilter> levels;  // S^{n,r} delta, n = 0..n_max
  levels.push_back(delta<double>(s.dim()));
  for (int n = 1; n <= n_max; ++n)
    levels.push_back(subdivide(fs.masks[static_cast<std::size_t>((n - 1) % fs.period())], M, levels.back()));

  ConvergenceReport rep;
  rep.reference_level = n_max;
  for (const auto& mu : mus) {
    FloatFilter ref = scale(axis_difference(levels[static_cast<std::size_t>(n_max)], mu), scaled_power(M, mu.total() * n_max));
    std::vector<double> xs, ys;
    bool all_zero_tail = true;
    for (int n = 1; n < n_max; ++n) {
      FloatFilter g = scale(axis_difference(levels[static_cast<std::size_t>(n)], mu), scaled_power(M, mu.total() * n));
      const int F = combined_dilation(M, n_max - n);
      // Level-n points k with F k in the reference support, together with the level-n support.
      MultiIndex lo = g.box().lo(), hi = g.box().hi();
      if (g.empty()) lo = hi = MultiIndex(static_cast<std::size_t>(s.dim()), 0);
      if (!ref.empty())
        for (std::size_t i = 0; i < lo.size(); ++i) {
          lo[i] = std::min(lo[i], -floor_div(-ref.box().lo()[i], F));
          hi[i] = std::max(hi[i], floor_div(ref.box().hi()[i], F));
        }
      double sup = 0;
      LatticeBox(lo, hi).for_each([&](const MultiIndex& k, std::size_t) {
        sup = std::max(sup, std::fabs(g(k) - ref(F * k)));
      });
      rep.rows.push_back({mu, n, sup});
      if (sup > 0) {
        xs.push_back(n);
        ys.push_back(std::log(sup) / std::log(static_cast<double>(M)));
        all_zero_tail = false;
      }
    }
    ConvergenceSeries ser;
    ser.mu = mu;
    if (xs.size() >= 2) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
      mx /= static_cast<double>(xs.size());
      my /= static_cast<double>(xs.size());
      double sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
      }
      ser.slope = sxy / sxx;
      ser.decays = ser.slope < -0.1;
    } else {
      ser.slope = all_zero_tail ? -INFINITY : 0.0;
      ser.decays = all_zero_tail;
    }
    rep.series.push_back(ser);
  }
  return rep;
}

template SampleGrid cascade_samples<Rational>(const Scheme<Rational>&, int, const MultiIndex&, const RationalFilter*);
template SampleGrid cascade_samples<double>(const Scheme<double>&, int, const MultiIndex&, const FloatFilter*);
template ConvergenceReport convergence_residuals<Rational>(const Scheme<Rational>&, int, int);
template ConvergenceReport convergence_residuals<double>(const Scheme<double>&, int, int);

std::string export_csv(const SampleGrid& g) {
  std::string out;
  for (int i = 0; i < g.dim; ++i) out += "x" + std::to_string(i + 1) + ",";
  out += "value\n";
  const double h = g.scale();
  g.box.for_each([&](const MultiIndex& k, std::size_t o) {
    for (int c : k) out += format_double(c * h) + ",";
    out += format_double(g.values[o]) + "\n";
  });
  return out;
}

SampleGrid parse_grid_csv(std::string_view text, int level, int dilation) {
  require_dilation(dilation);
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::parse_error, "empty grid file");
  int dim = 0;
  {
    std::istringstream hs(line);
    std::string f;
    std::vector<std::string> cols;
    while (std::getline(hs, f, ',')) cols.push_back(f);
    if (cols.size() < 2 || cols.back() != "value") fail(ErrorCode::parse_error, "grid header must be x1,...,xd,value");
    dim = static_cast<int>(cols.size()) - 1;
  }
  const double inv = std::pow(static_cast<double>(dilation), level);
  std::vector<std::pair<MultiIndex, double>> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f;
    std::vector<double> v;
    while (std::getline(ls, f, ',')) v.push_back(parse_double(f));
    if (static_cast<int>(v.size()) != dim + 1) fail(ErrorCode::parse_error, "grid row has wrong field count");
    MultiIndex k(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) k[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(v[static_cast<std::size_t>(i)] * inv));
    entries.emplace_back(k, v.back());
  }
  SampleGrid g;
  g.dim = dim;
  g.level = level;
  g.dilation = dilation;
  g.mu = MultiIndex(static_cast<std::size_t>(dim), 0);
  if (entries.empty()) {
    g.box = LatticeBox::empty_box(dim);
    return g;
  }
  MultiIndex lo = entries.front().first, hi = lo;
  for (const auto& [k, v] : entries)
    for (std::size_t i = 0; i < k.size(); ++i) lo[i] = std::min(lo[i], k[i]), hi[i] = std::max(hi[i], k[i]);
  g.box = LatticeBox(lo, hi);
  g.values.assign(g.box.volume(), 0.0);
  for (const auto& [k, v] : entries) g.values[g.box.offset(k)] = v;
  return g;
}

std::string export_pgm(const SampleGrid& g, Normalize mode) {
  if (g.dim != 2) fail(ErrorCode::unsupported_dimension, "PGM export needs a 2D grid");
  if (g.box.empty()) fail(ErrorCode::invalid_argument, "cannot render an empty grid");
  double lo = INFINITY, hi = -INFINITY, amax = 0;
  for (double v : g.values) lo = std::min(lo, v), hi = std::max(hi, v), amax = std::max(amax, std::fabs(v));
  auto level = [&](double v) {
    double u;
    if (mode == Normalize::symmetric)
      u = amax > 0 ? (v / amax + 1) / 2 : 0.5;
    else
      u = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return static_cast<unsigned>(std::lround(std::clamp(u, 0.0, 1.0) * 65535.0));
  };
  const int w = g.box.extent(0), h = g.box.extent(1);
  std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n65535\n";
  out.reserve(out.size() + static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 2);
  for (int y = g.box.hi()[1]; y >= g.box.lo()[1]; --y)
    for (int x = g.box.lo()[0]; x <= g.box.hi()[0]; ++x) {
      unsigned p = level(g.at(MultiIndex{x, y}));
      out.push_back(static_cast<char>((p >> 8) & 0xff));
      out.push_back(static_cast<char>(p & 0xff));
    }
  return out;
}

}  // namespace qsub
