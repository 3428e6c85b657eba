#include "texshape/trials/records.hpp"

#include <fstream>

#include "texshape/error.hpp"

namespace texshape::trials {

using nlohmann::json;

std::string_view to_string(SubjectKind kind) noexcept {
  return kind == SubjectKind::human ? "human" : "machine";
}

std::optional<SubjectKind> parse_subject_kind(std::string_view name) noexcept {
  if (name == "human") return SubjectKind::human;
  if (name == "machine") return SubjectKind::machine;
  return std::nullopt;
}

std::string_view to_string(TrialPhase phase) noexcept {
  return phase == TrialPhase::practice ? "practice" : "main";
}

std::optional<TrialPhase> parse_trial_phase(std::string_view name) noexcept {
  if (name == "practice") return TrialPhase::practice;
  if (name == "main") return TrialPhase::main;
  return std::nullopt;
}

void validate(const TrialRecord& r, double response_window_ms) {
  if (r.response.has_value() != r.reaction_time_ms.has_value()) {
    throw Error(Errc::invalid_argument,
                "trial " + std::to_string(r.trial_index) + ": response and reaction time must "
                "be given together");
  }
  if (r.reaction_time_ms &&
      !(*r.reaction_time_ms > 0.0 && *r.reaction_time_ms <= response_window_ms)) {
    throw Error(Errc::invalid_argument, "trial " + std::to_string(r.trial_index) +
                                            ": reaction time outside (0, " +
                                            std::to_string(response_window_ms) + "] ms");
  }
}

namespace {

json opt_category(const std::optional<Category>& c) {
  return c ? json(std::string(to_string(*c))) : json(nullptr);
}

std::optional<Category> read_category(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  const auto name = it->get<std::string>();
  const auto c = parse_category(name);
  if (!c) throw Error(Errc::parse_error, std::string(key) + ": unknown category '" + name + "'");
  return c;
}

}  // namespace

json to_json(const TrialRecord& r) {
  json j{
      {"session_id", r.session_id},
      {"subject_id", r.subject_id},
      {"subject_kind", std::string(to_string(r.subject_kind))},
      {"trial_index", r.trial_index},
      {"phase", std::string(to_string(r.phase))},
      {"stimulus_id", r.stimulus_id},
      {"condition", std::string(to_string(r.condition))},
      {"shape_category", opt_category(r.shape_category)},
      {"texture_category", opt_category(r.texture_category)},
      {"presented_at", r.presented_at ? json(*r.presented_at) : json(nullptr)},
      {"response", opt_category(r.response)},
      {"rt_ms", r.reaction_time_ms ? json(*r.reaction_time_ms) : json(nullptr)},
      {"timing_flag", r.timing_flag},
  };
  if (r.distortion) {
    j["distortion_kind"] = std::string(to_string(r.distortion->kind));
    j["distortion_level"] = r.distortion->level;
  }
  return j;
}

TrialRecord trial_record_from_json(const json& j) {
  try {
    TrialRecord r;
    r.session_id = j.at("session_id").get<std::string>();
    r.subject_id = j.at("subject_id").get<std::string>();
    const auto kind = parse_subject_kind(j.at("subject_kind").get<std::string>());
    if (!kind) throw Error(Errc::parse_error, "unknown subject_kind");
    r.subject_kind = *kind;
    r.trial_index = j.at("trial_index").get<std::int64_t>();
    const auto phase = parse_trial_phase(j.at("phase").get<std::string>());
    if (!phase) throw Error(Errc::parse_error, "unknown phase");
    r.phase = *phase;
    r.stimulus_id = j.at("stimulus_id").get<std::string>();
    const auto cond_name = j.at("condition").get<std::string>();
    const auto cond = parse_condition(cond_name);
    if (!cond) throw Error(Errc::parse_error, "unknown condition '" + cond_name + "'");
    r.condition = *cond;
    r.shape_category = read_category(j, "shape_category");
    r.texture_category = read_category(j, "texture_category");
    if (j.contains("distortion_kind") && !j.at("distortion_kind").is_null()) {
      const auto k = parse_distortion_kind(j.at("distortion_kind").get<std::string>());
      if (!k) throw Error(Errc::parse_error, "unknown distortion_kind");
      r.distortion = DistortionTag{*k, j.at("distortion_level").get<double>()};
    }
    if (j.contains("presented_at") && !j.at("presented_at").is_null()) {
      r.presented_at = j.at("presented_at").get<std::int64_t>();
    }
    r.response = read_category(j, "response");
    if (j.contains("rt_ms") && !j.at("rt_ms").is_null()) {
      r.reaction_time_ms = j.at("rt_ms").get<double>();
    }
    r.timing_flag = j.value("timing_flag", false);
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("trial record: ") + e.what());
  }
}

void write_records(std::ostream& out, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_records(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_records(out, records);
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

std::vector<TrialRecord> read_records(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(trial_record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(Errc::parse_error, "records line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "records line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TrialRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  return read_records(in);
}

}  // namespace texshape::trials
