#pragma once

#include <optional>
#include <string>
#include <vector>

#include "texshape/metrics/observation.hpp"

namespace texshape::cli {

std::vector<metrics::Observation> load_all(const std::vector<std::string>& inputs);
// Rows carrying both categories; skipped counts the rest.
std::vector<metrics::Observation> cue_conflict_only(const std::vector<metrics::Observation>& rows,
                                                    std::size_t& skipped);
std::string show(const std::optional<double>& v);

}  // namespace texshape::cli
