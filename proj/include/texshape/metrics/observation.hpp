#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "texshape/taxonomy/category.hpp"
#include "texshape/trials/records.hpp"

namespace texshape::metrics {

using trials::SubjectKind;

// Analysis row shared by humans and classifiers. For distorted stimuli the
// condition is the distortion kind name ("contrast", "eidolon-II", ...) and
// level carries the severity.
struct Observation {
  std::string subject_id;
  SubjectKind subject_kind = SubjectKind::human;
  std::string condition;
  std::string stimulus_id;
  std::optional<Category> shape_category;
  std::optional<Category> texture_category;
  std::optional<double> level;
  std::optional<Category> response;
  std::optional<double> rt_ms;

  friend bool operator==(const Observation&, const Observation&) = default;
};

// Practice records are dropped.
std::vector<Observation> from_records(std::span<const trials::TrialRecord> records);

// Column order of the external CSV.
inline constexpr const char* kObservationColumns =
    "subject_id,subject_kind,condition,stimulus_id,shape_category,texture_category,level,response,rt_ms";

// Header required; empty fields or "NA" mean absent.
std::vector<Observation> read_observations_csv(std::istream& in);
void write_observations_csv(std::ostream& out, std::span<const Observation> observations);

// A .csv file, a trial-record export (.jsonl / .ndjson), or a directory of
// such files read in name order.
std::vector<Observation> load_observations(const std::filesystem::path& path);
std::vector<Observation> load_observations(std::span<const std::filesystem::path> paths);

// Median over human observations with a reaction time; machine rows never
// contribute.
std::optional<double> median_reaction_time(std::span<const Observation> observations);

}  // namespace texshape::metrics
