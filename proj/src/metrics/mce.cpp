#include "texshape/metrics/mce.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "csv_util.hpp"
#include "texshape/error.hpp"

namespace texshape::metrics {

CorruptionReport compute_mce(std::span<const double> errors,
                             std::optional<std::span<const double>> baseline) {
  if (errors.size() != kCorruptionCount) {
    throw Error(Errc::invalid_argument, "expected 15 corruption errors, got " + std::to_string(errors.size()));
  }
  CorruptionReport r;
  std::copy(errors.begin(), errors.end(), r.errors.begin());
  r.ce = r.errors;
  if (baseline) {
    if (baseline->size() != kCorruptionCount) {
      throw Error(Errc::invalid_argument,
                  "expected 15 baseline errors, got " + std::to_string(baseline->size()));
    }
    CorruptionValues b{};
    std::copy(baseline->begin(), baseline->end(), b.begin());
    for (int i = 0; i < kCorruptionCount; ++i) {
      if (!(b[i] > 0.0)) {
        throw Error(Errc::invalid_argument,
                    "baseline error for " + std::string(kCorruptionNames[i]) + " must be positive");
      }
      r.ce[i] = 100.0 * r.errors[i] / b[i];
    }
    r.baseline = b;
    r.normalized = true;
  }
  double sum = 0.0;
  for (double v : r.ce) sum += v;
  r.mce = sum / kCorruptionCount;
  return r;
}

CorruptionValues read_corruption_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "corruption CSV is empty");
  const auto header = detail::split_row(line);
  if (header.size() != 2 || header[0] != "corruption" || header[1] != "error") {
    throw Error(Errc::parse_error, "corruption CSV header must be 'corruption,error'");
  }
  CorruptionValues values{};
  std::array<bool, kCorruptionCount> seen{};
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto where = "line " + std::to_string(lineno);
    const auto f = detail::split_row(line);
    if (f.size() != 2) throw Error(Errc::parse_error, where + ": expected 2 fields");
    const auto it = std::find(kCorruptionNames.begin(), kCorruptionNames.end(), f[0]);
    if (it == kCorruptionNames.end()) throw Error(Errc::parse_error, where + ": unknown corruption '" + f[0] + "'");
    const auto i = static_cast<std::size_t>(it - kCorruptionNames.begin());
    if (seen[i]) throw Error(Errc::parse_error, where + ": duplicate corruption '" + f[0] + "'");
    seen[i] = true;
    values[i] = detail::parse_double(f[1], where);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(Errc::invalid_argument, "corruption CSV lacks " + std::string(kCorruptionNames[i]));
  }
  return values;
}

CorruptionValues read_corruption_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  try {
    return read_corruption_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace texshape::metrics
