#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "texshape/error.hpp"

namespace texshape::metrics::detail {

inline std::vector<std::string> split_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

inline bool is_absent(std::string_view field) { return field.empty() || field == "NA"; }

inline double parse_double(std::string_view field, const std::string& where) {
  double v = 0.0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw Error(Errc::parse_error, where + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

inline std::optional<double> parse_optional_double(std::string_view field, const std::string& where) {
  if (is_absent(field)) return std::nullopt;
  return parse_double(field, where);
}

inline long long parse_int(std::string_view field, const std::string& where) {
  long long v = 0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw Error(Errc::parse_error, where + ": bad integer '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace texshape::metrics::detail
