#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "texshape/stimuli/manifest.hpp"

namespace texshape::trials {

enum class Instruction { neutral, shape, texture };

std::string_view to_string(Instruction instruction) noexcept;
std::optional<Instruction> parse_instruction(std::string_view name) noexcept;

// Per-trial phase lengths in milliseconds.
struct PhaseDurations {
  int fixation_ms = 300;
  int stimulus_ms = 200;
  int mask_ms = 200;
  int response_ms = 1500;
  int feedback_ms = 300;  // practice trials only

  int main_trial_ms() const noexcept { return fixation_ms + stimulus_ms + mask_ms + response_ms; }
  int practice_trial_ms() const noexcept { return main_trial_ms() + feedback_ms; }
  // Offset from presentation to the start of the response screen.
  int response_onset_ms() const noexcept { return fixation_ms + stimulus_ms + mask_ms; }

  friend bool operator==(const PhaseDurations&, const PhaseDurations&) = default;
};

inline constexpr int kBlockSize = 256;
inline constexpr int kPracticeTrials = 320;
inline constexpr int kPracticeBlockSize = 160;
inline constexpr double kBackgroundGrey = 0.7614;

// What a caller supplies; create_plan resolves the manifests.
struct PlanConfig {
  std::string id;
  std::vector<std::string> manifests;
  std::optional<std::string> practice_manifest;
  Instruction instruction = Instruction::neutral;
  PhaseDurations durations;
  int block_size = kBlockSize;
  int practice_trials = kPracticeTrials;
  int practice_block_size = kPracticeBlockSize;
  double background_grey = kBackgroundGrey;

  friend bool operator==(const PlanConfig&, const PlanConfig&) = default;
};

struct ExperimentPlan {
  PlanConfig config;
  std::vector<StimulusRecord> stimuli;           // main-phase pool, manifest order
  std::vector<StimulusRecord> practice_stimuli;  // disjoint practice pool

  const std::string& id() const noexcept { return config.id; }
  int block_count() const noexcept;

  friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

// Identifier charset for plans, subjects and sessions: [A-Za-z0-9._-]+.
bool is_valid_id(std::string_view id) noexcept;

// Loads manifests (relative stimulus paths resolve against the manifest's
// directory) and validates:
//   - ids, durations > 0, block sizes > 0;
//   - more than block_size trials must split into whole blocks;
//   - practice_trials > 0 needs a practice manifest whose stimuli share no
//     id or file with the main pool.
ExperimentPlan create_plan(const PlanConfig& config);

// Validation only, for plans already resolved (e.g. from the store).
void validate(const ExperimentPlan& plan);

nlohmann::json to_json(const PlanConfig& config);
PlanConfig plan_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const nlohmann::json& j);

}  // namespace texshape::trials
