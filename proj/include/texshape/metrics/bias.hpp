#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "texshape/metrics/observation.hpp"

namespace texshape::metrics {

struct BiasCounts {
  std::int64_t n_trials_total = 0;
  std::int64_t n_excluded_no_conflict = 0;
  std::int64_t n_shape_match = 0;
  std::int64_t n_texture_match = 0;
  std::int64_t n_neither = 0;      // includes n_no_response
  std::int64_t n_no_response = 0;

  std::int64_t n_analyzed() const noexcept { return n_trials_total - n_excluded_no_conflict; }
  // shape / (shape + texture); empty when no response matched either cue.
  std::optional<double> shape_bias() const noexcept;
  std::optional<double> texture_bias() const noexcept;
  // (shape + texture) / analyzed; empty when nothing was analyzed.
  std::optional<double> fraction_correct_either() const noexcept;

  BiasCounts& operator+=(const BiasCounts& other) noexcept;
  friend bool operator==(const BiasCounts&, const BiasCounts&) = default;
};

struct BiasReport {
  std::string subject_group;
  BiasCounts aggregate;
  std::array<BiasCounts, kCategoryCount> per_category;  // keyed by shape category

  friend bool operator==(const BiasReport&, const BiasReport&) = default;
};

// Every observation must carry both categories. Trials whose categories
// coincide are excluded; a missing response counts as neither. Throws
// missing_data when no trial is left to analyze.
BiasReport compute_shape_bias(std::span<const Observation> observations,
                              std::string subject_group = "all");

}  // namespace texshape::metrics
