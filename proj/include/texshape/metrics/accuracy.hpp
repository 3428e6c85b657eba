#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "texshape/metrics/observation.hpp"

namespace texshape::metrics {

// strict: correct / all trials. answered_only: correct / answered trials.
enum class AccuracyMode { strict, answered_only };

std::string_view to_string(AccuracyMode mode) noexcept;
std::optional<AccuracyMode> parse_accuracy_mode(std::string_view name) noexcept;

enum class GroupBy { none, condition, subject, subject_kind };

std::string_view to_string(GroupBy group_by) noexcept;
std::optional<GroupBy> parse_group_by(std::string_view name) noexcept;

struct AccuracyRow {
  std::string group;     // "all" when ungrouped
  std::string category;  // "all" or a category name
  std::int64_t n_trials = 0;
  std::int64_t n_answered = 0;
  std::int64_t n_correct = 0;
  std::optional<double> accuracy;

  friend bool operator==(const AccuracyRow&, const AccuracyRow&) = default;
};

// Per group: one "all" row, then 16 category rows in index order.
struct AccuracyTable {
  AccuracyMode mode = AccuracyMode::strict;
  GroupBy group_by = GroupBy::none;
  std::vector<AccuracyRow> rows;

  friend bool operator==(const AccuracyTable&, const AccuracyTable&) = default;
};

// The ground truth is the shape category, or the texture category for
// texture-only stimuli. Cue-conflict rows are rejected.
std::optional<Category> ground_truth(const Observation& observation);

AccuracyTable compute_accuracy(std::span<const Observation> observations,
                               AccuracyMode mode = AccuracyMode::strict,
                               GroupBy group_by = GroupBy::none);

}  // namespace texshape::metrics
