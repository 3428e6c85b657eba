#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "texshape/metrics/accuracy.hpp"
#include "texshape/metrics/observation.hpp"

namespace texshape::metrics {

struct CurvePoint {
  double level = 0.0;
  std::int64_t n_trials = 0;
  std::int64_t n_answered = 0;
  std::int64_t n_correct = 0;
  std::optional<double> accuracy;  // empty for levels without data
  // Range of per-subject accuracies at this level.
  std::optional<double> band_min;
  std::optional<double> band_max;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct CurveReport {
  std::string kind;
  std::string subject_group;
  AccuracyMode mode = AccuracyMode::strict;
  std::vector<CurvePoint> points;      // grid order
  std::vector<double> missing_levels;  // grid levels with no trials

  friend bool operator==(const CurveReport&, const CurveReport&) = default;
};

// Observations whose condition equals kind, bucketed by level. With an empty
// grid the distinct observed levels are used in ascending order. Levels
// match within 1e-9 relative. Throws missing_data when kind is absent.
CurveReport compute_curve(std::span<const Observation> observations, std::string_view kind,
                          std::span<const double> levels = {},
                          AccuracyMode mode = AccuracyMode::strict,
                          std::string subject_group = "all");

}  // namespace texshape::metrics
