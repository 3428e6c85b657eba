#include "texshape/metrics/bias.hpp"

#include "texshape/error.hpp"

namespace texshape::metrics {

std::optional<double> BiasCounts::shape_bias() const noexcept {
  const auto matched = n_shape_match + n_texture_match;
  if (matched == 0) return std::nullopt;
  return static_cast<double>(n_shape_match) / static_cast<double>(matched);
}

std::optional<double> BiasCounts::texture_bias() const noexcept {
  const auto matched = n_shape_match + n_texture_match;
  if (matched == 0) return std::nullopt;
  return static_cast<double>(n_texture_match) / static_cast<double>(matched);
}

std::optional<double> BiasCounts::fraction_correct_either() const noexcept {
  const auto analyzed = n_analyzed();
  if (analyzed == 0) return std::nullopt;
  return static_cast<double>(n_shape_match + n_texture_match) / static_cast<double>(analyzed);
}

BiasCounts& BiasCounts::operator+=(const BiasCounts& o) noexcept {
  n_trials_total += o.n_trials_total;
  n_excluded_no_conflict += o.n_excluded_no_conflict;
  n_shape_match += o.n_shape_match;
  n_texture_match += o.n_texture_match;
  n_neither += o.n_neither;
  n_no_response += o.n_no_response;
  return *this;
}

BiasReport compute_shape_bias(std::span<const Observation> observations, std::string subject_group) {
  BiasReport report;
  report.subject_group = std::move(subject_group);
  for (const auto& o : observations) {
    if (!o.shape_category || !o.texture_category) {
      throw Error(Errc::invalid_argument,
                  "stimulus " + o.stimulus_id + " lacks a shape or texture category");
    }
    auto& cat = report.per_category[static_cast<std::size_t>(index_of(*o.shape_category))];
    BiasCounts one;
    one.n_trials_total = 1;
    if (*o.shape_category == *o.texture_category) {
      one.n_excluded_no_conflict = 1;
    } else if (!o.response) {
      one.n_neither = 1;
      one.n_no_response = 1;
    } else if (*o.response == *o.shape_category) {
      one.n_shape_match = 1;
    } else if (*o.response == *o.texture_category) {
      one.n_texture_match = 1;
    } else {
      one.n_neither = 1;
    }
    cat += one;
    report.aggregate += one;
  }
  if (report.aggregate.n_analyzed() == 0) {
    throw Error(Errc::missing_data, "no cue-conflict trials to analyze");
  }
  return report;
}

}  // namespace texshape::metrics
