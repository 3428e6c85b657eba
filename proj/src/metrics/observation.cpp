#include "texshape/metrics/observation.hpp"

#include <algorithm>
#include <fstream>

#include "csv_util.hpp"
#include "texshape/error.hpp"

namespace texshape::metrics {

namespace fs = std::filesystem;

std::vector<Observation> from_records(std::span<const trials::TrialRecord> records) {
  std::vector<Observation> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (r.phase == trials::TrialPhase::practice) continue;
    Observation o;
    o.subject_id = r.subject_id;
    o.subject_kind = r.subject_kind;
    if (r.distortion) {
      o.condition = std::string(to_string(r.distortion->kind));
      o.level = r.distortion->level;
    } else {
      o.condition = std::string(to_string(r.condition));
    }
    o.stimulus_id = r.stimulus_id;
    o.shape_category = r.shape_category;
    o.texture_category = r.texture_category;
    o.response = r.response;
    o.rt_ms = r.reaction_time_ms;
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

std::optional<Category> optional_category(const std::string& field, const std::string& where) {
  if (detail::is_absent(field)) return std::nullopt;
  const auto c = parse_category(field);
  if (!c) throw Error(Errc::parse_error, where + ": unknown category '" + field + "'");
  return c;
}

std::string category_field(const std::optional<Category>& c) {
  return c ? std::string(to_string(*c)) : std::string("NA");
}

}  // namespace

std::vector<Observation> read_observations_csv(std::istream& in) {
  const auto expected = detail::split_row(kObservationColumns);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "observation CSV is empty");
  const auto header = detail::split_row(line);
  // Columns may come in any order; all must be present.
  std::vector<std::size_t> col(expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto it = std::find(header.begin(), header.end(), expected[i]);
    if (it == header.end()) throw Error(Errc::parse_error, "observation CSV lacks column " + expected[i]);
    col[i] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<Observation> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = detail::split_row(line);
    const auto where = "line " + std::to_string(lineno);
    if (f.size() != header.size()) throw Error(Errc::parse_error, where + ": expected " + std::to_string(header.size()) + " fields");
    Observation o;
    o.subject_id = f[col[0]];
    const auto kind = trials::parse_subject_kind(f[col[1]]);
    if (!kind) throw Error(Errc::parse_error, where + ": unknown subject_kind '" + f[col[1]] + "'");
    o.subject_kind = *kind;
    o.condition = f[col[2]];
    o.stimulus_id = f[col[3]];
    o.shape_category = optional_category(f[col[4]], where);
    o.texture_category = optional_category(f[col[5]], where);
    o.level = detail::parse_optional_double(f[col[6]], where);
    o.response = optional_category(f[col[7]], where);
    o.rt_ms = detail::parse_optional_double(f[col[8]], where);
    out.push_back(std::move(o));
  }
  return out;
}

void write_observations_csv(std::ostream& out, std::span<const Observation> observations) {
  out << kObservationColumns << '\n';
  for (const auto& o : observations) {
    out << o.subject_id << ',' << to_string(o.subject_kind) << ',' << o.condition << ','
        << o.stimulus_id << ',' << category_field(o.shape_category) << ','
        << category_field(o.texture_category) << ',' << detail::format_optional(o.level) << ','
        << category_field(o.response) << ',' << detail::format_optional(o.rt_ms) << '\n';
  }
}

namespace {

void load_file(const fs::path& path, std::vector<Observation>& out) {
  const auto ext = path.extension().string();
  if (ext == ".csv") {
    std::ifstream in(path);
    if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
    try {
      auto rows = read_observations_csv(in);
      out.insert(out.end(), rows.begin(), rows.end());
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  } else if (ext == ".jsonl" || ext == ".ndjson") {
    const auto records = trials::read_records(path);
    auto rows = from_records(records);
    out.insert(out.end(), rows.begin(), rows.end());
  } else {
    throw Error(Errc::unsupported_format, "unsupported observation file " + path.string());
  }
}

}  // namespace

std::vector<Observation> load_observations(const fs::path& path) {
  std::vector<Observation> out;
  if (!fs::exists(path)) throw Error(Errc::not_found, "no such file or directory: " + path.string());
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      const auto ext = e.path().extension().string();
      if (e.is_regular_file() && (ext == ".csv" || ext == ".jsonl" || ext == ".ndjson")) {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(Errc::missing_data, "no observation files in " + path.string());
    for (const auto& f : files) load_file(f, out);
  } else {
    load_file(path, out);
  }
  return out;
}

std::vector<Observation> load_observations(std::span<const fs::path> paths) {
  std::vector<Observation> out;
  for (const auto& p : paths) {
    auto rows = load_observations(p);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::optional<double> median_reaction_time(std::span<const Observation> observations) {
  std::vector<double> rts;
  for (const auto& o : observations) {
    if (o.subject_kind == SubjectKind::human && o.rt_ms) rts.push_back(*o.rt_ms);
  }
  if (rts.empty()) return std::nullopt;
  std::sort(rts.begin(), rts.end());
  const auto n = rts.size();
  return n % 2 == 1 ? rts[n / 2] : 0.5 * (rts[n / 2 - 1] + rts[n / 2]);
}

}  // namespace texshape::metrics
