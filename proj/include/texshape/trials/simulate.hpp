#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "texshape/taxonomy/mapping.hpp"
#include "texshape/trials/engine.hpp"
#include "texshape/trials/plan.hpp"
#include "texshape/trials/records.hpp"

namespace texshape::trials {

// stimulus id -> 16-class decision of a classifier.
using DecisionTable = std::map<std::string, Category>;

// One machine record per main-phase stimulus, in plan order, rt none.
// session_id is "sim.<plan>.<subject>". Throws missing_data listing the
// first uncovered stimulus ids.
std::vector<TrialRecord> run_simulated_observer(const ExperimentPlan& plan,
                                                const DecisionTable& decisions,
                                                const std::string& subject_id);

// CSV "stimulus_id,category" (header row optional).
DecisionTable load_decisions(const std::filesystem::path& path);

// CSV rows "stimulus_id,p0,...,pN-1" of classifier probabilities, reduced
// through the mapping.
DecisionTable decisions_from_probabilities(const std::filesystem::path& path,
                                           const ClassMapping& mapping,
                                           Aggregation aggregation = Aggregation::max_leaf);

// Response for a presented trial: category and rt in ms, or none.
using Responder = std::function<std::optional<std::pair<Category, double>>(const TrialSpec&)>;

struct DrivenSession {
  std::string session_id;
  std::vector<std::int64_t> breaks;  // trials completed when each break was shown
  std::vector<int> trial_durations_ms;
  std::vector<TrialRecord> records;
};

// Runs a whole session against the engine on a manual clock, advancing the
// clock through every phase exactly as a client would.
DrivenSession drive_session(TrialEngine& engine, ManualClock& clock, const std::string& plan_id,
                            const std::string& subject_id, std::uint64_t seed,
                            const Responder& responder,
                            SubjectKind kind = SubjectKind::human);

}  // namespace texshape::trials
