#include "core/filter_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qsub {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_char(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = line.find(sep, start);
    std::string_view f = line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start);
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.front()))) f.remove_prefix(1);
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.remove_suffix(1);
    out.emplace_back(f);
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

int parse_int(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": bad integer '" + s + "'");
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto p = text.find('\n', start);
    if (p == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, p - start));
    start = p + 1;
  }
  return out;
}

template <class T>
AnyFilter build(int dim, const std::vector<std::pair<MultiIndex, std::string>>& raw) {
  std::vector<std::pair<MultiIndex, T>> entries;
  entries.reserve(raw.size());
  for (const auto& [k, s] : raw) {
    if constexpr (std::is_same_v<T, Rational>)
      entries.emplace_back(k, parse_rational(s));
    else
      entries.emplace_back(k, parse_double(s));
  }
  return BasicFilter<T>::from_entries(dim, entries);
}

}  // namespace

AnyFilter parse_filter(std::string_view text) {
  int dim = -1;
  std::string backend;
  bool magic = false;
  std::vector<std::pair<MultiIndex, std::string>> raw;
  std::set<MultiIndex> seen;
  int line_no = 0;
  for (std::string_view line : lines_of(text)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (!magic) {
      if (tok.size() != 2 || tok[0] != "qsubfilter" || tok[1] != "1")
        fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 'qsubfilter 1'");
      magic = true;
      continue;
    }
    if (dim < 0) {
      if (tok.size() != 2 || tok[0] != "dim") fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 'dim <d>'");
      dim = parse_int(tok[1], line_no);
      if (dim < 1) fail(ErrorCode::invalid_dimension, "dimension must be >= 1");
      continue;
    }
    if (backend.empty()) {
      if (tok.size() != 2 || tok[0] != "backend" || (tok[1] != "rational" && tok[1] != "float"))
        fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 'backend rational|float'");
      backend = tok[1];
      continue;
    }
    if (static_cast<int>(tok.size()) != dim + 1)
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                                       " indices and a value");
    MultiIndex k(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) k[static_cast<std::size_t>(i)] = parse_int(tok[static_cast<std::size_t>(i)], line_no);
    if (!seen.insert(k).second) fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": duplicate index " + to_string(k));
    raw.emplace_back(k, tok.back());
  }
  if (!magic || dim < 0 || backend.empty()) fail(ErrorCode::parse_error, "incomplete filter header");
  return backend == "rational" ? build<Rational>(dim, raw) : build<double>(dim, raw);
}

std::string format_filter(const AnyFilter& f) {
  std::ostringstream out;
  std::visit(
      [&](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        out << "qsubfilter 1\ndim " << u.dim() << "\nbackend " << Scalar<T>::name << "\n";
        u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
          for (int c : k) out << c << ' ';
          if constexpr (std::is_same_v<T, Rational>)
            out << format_rational(v) << '\n';
          else
            out << format_double(v) << '\n';
        });
      },
      f);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io_error, "write failed for '" + path + "'");
}

AnyFilter load_filter(const std::string& path) { return parse_filter(read_text_file(path)); }

void save_filter(const AnyFilter& f, const std::string& path) { write_text_file(path, format_filter(f)); }

AnyFilter parse_control_net(std::string_view text, Backend backend) {
  int dim = -1;
  std::vector<std::pair<MultiIndex, std::string>> raw;
  std::set<MultiIndex> seen;
  int line_no = 0;
  for (std::string_view line : lines_of(text)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    auto f = split_char(line, ',');
    if (dim < 0) {
      dim = static_cast<int>(f.size()) - 1;
      if (dim < 1 || f.back() != "value") fail(ErrorCode::parse_error, "control net header must be k1,...,kd,value");
      for (int i = 0; i < dim; ++i)
        if (f[static_cast<std::size_t>(i)] != "k" + std::to_string(i + 1))
          fail(ErrorCode::parse_error, "control net header must be k1,...,kd,value");
      continue;
    }
    if (static_cast<int>(f.size()) != dim + 1)
      fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": wrong field count");
    MultiIndex k(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) k[static_cast<std::size_t>(i)] = parse_int(f[static_cast<std::size_t>(i)], line_no);
    if (!seen.insert(k).second) fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": duplicate index " + to_string(k));
    raw.emplace_back(k, f.back());
  }
  if (dim < 0) fail(ErrorCode::parse_error, "empty control net");
  return backend == Backend::rational ? build<Rational>(dim, raw) : build<double>(dim, raw);
}

std::string format_control_net(const AnyFilter& f) {
  std::ostringstream out;
  std::visit(
      [&](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        for (int i = 0; i < u.dim(); ++i) out << 'k' << i + 1 << ',';
        out << "value\n";
        u.for_each_nonzero([&](const MultiIndex& k, const T& v) {
          for (int c : k) out << c << ',';
          if constexpr (std::is_same_v<T, Rational>)
            out << format_rational(v) << '\n';
          else
            out << format_double(v) << '\n';
        });
      },
      f);
  return out.str();
}

}  // namespace qsub
