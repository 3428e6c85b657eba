#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "texshape/stimuli/manifest.hpp"
#include "texshape/taxonomy/category.hpp"

namespace texshape::trials {

enum class SubjectKind { human, machine };
enum class TrialPhase { practice, main };

std::string_view to_string(SubjectKind kind) noexcept;
std::optional<SubjectKind> parse_subject_kind(std::string_view name) noexcept;
std::string_view to_string(TrialPhase phase) noexcept;
std::optional<TrialPhase> parse_trial_phase(std::string_view name) noexcept;

// One closed presentation. Invariants: response and reaction_time_ms are
// either both set or both empty; reaction_time_ms lies in (0, window].
struct TrialRecord {
  std::string session_id;
  std::string subject_id;
  SubjectKind subject_kind = SubjectKind::human;
  std::int64_t trial_index = 0;
  TrialPhase phase = TrialPhase::main;
  std::string stimulus_id;
  StimulusCondition condition = StimulusCondition::original;
  std::optional<Category> shape_category;
  std::optional<Category> texture_category;
  std::optional<DistortionTag> distortion;
  std::optional<std::int64_t> presented_at;  // ms since epoch (server clock)
  std::optional<Category> response;
  std::optional<double> reaction_time_ms;
  // Client-reported click - onset disagreed with rt_ms beyond tolerance.
  bool timing_flag = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

void validate(const TrialRecord& record, double response_window_ms = 1500.0);

nlohmann::json to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const nlohmann::json& j);

// Line-delimited export, one record object per line, no header.
void write_records(std::ostream& out, const std::vector<TrialRecord>& records);
void write_records(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records(std::istream& in);
std::vector<TrialRecord> read_records(const std::filesystem::path& path);

}  // namespace texshape::trials
