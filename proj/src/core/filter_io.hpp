#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "core/filter.hpp"

namespace qsub {

using AnyFilter = std::variant<RationalFilter, FloatFilter>;

inline Backend backend_of(const AnyFilter& f) {
  return std::holds_alternative<RationalFilter>(f) ? Backend::rational : Backend::floating;
}
inline int dim_of(const AnyFilter& f) {
  return std::visit([](const auto& u) { return u.dim(); }, f);
}

// "qsubfilter 1" text format:
//   qsubfilter 1
//   dim <d>
//   backend rational|float
//   <k1> ... <kd> <value>      (one line per entry, '#' starts a comment)
AnyFilter parse_filter(std::string_view text);
std::string format_filter(const AnyFilter& f);
AnyFilter load_filter(const std::string& path);
void save_filter(const AnyFilter& f, const std::string& path);

// Control nets: CSV with header k1,...,kd,value.
AnyFilter parse_control_net(std::string_view text, Backend backend);
std::string format_control_net(const AnyFilter& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace qsub
