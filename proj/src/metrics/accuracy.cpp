#include "texshape/metrics/accuracy.hpp"

#include <array>
#include <map>

#include "texshape/error.hpp"

namespace texshape::metrics {

std::string_view to_string(AccuracyMode mode) noexcept {
  return mode == AccuracyMode::strict ? "strict" : "answered-only";
}

std::optional<AccuracyMode> parse_accuracy_mode(std::string_view name) noexcept {
  if (name == "strict") return AccuracyMode::strict;
  if (name == "answered-only") return AccuracyMode::answered_only;
  return std::nullopt;
}

std::string_view to_string(GroupBy g) noexcept {
  switch (g) {
    case GroupBy::none: return "none";
    case GroupBy::condition: return "condition";
    case GroupBy::subject: return "subject";
    case GroupBy::subject_kind: return "subject_kind";
  }
  return "none";
}

std::optional<GroupBy> parse_group_by(std::string_view name) noexcept {
  for (auto g : {GroupBy::none, GroupBy::condition, GroupBy::subject, GroupBy::subject_kind}) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

std::optional<Category> ground_truth(const Observation& o) {
  if (o.shape_category && o.texture_category) return std::nullopt;
  return o.shape_category ? o.shape_category : o.texture_category;
}

namespace {

struct Tally {
  std::int64_t trials = 0;
  std::int64_t answered = 0;
  std::int64_t correct = 0;
};

AccuracyRow make_row(std::string group, std::string category, const Tally& t, AccuracyMode mode) {
  AccuracyRow row{std::move(group), std::move(category), t.trials, t.answered, t.correct, std::nullopt};
  const auto denom = mode == AccuracyMode::strict ? t.trials : t.answered;
  if (denom > 0) row.accuracy = static_cast<double>(t.correct) / static_cast<double>(denom);
  return row;
}

std::string group_key(const Observation& o, GroupBy g) {
  switch (g) {
    case GroupBy::none: return "all";
    case GroupBy::condition: return o.condition;
    case GroupBy::subject: return o.subject_id;
    case GroupBy::subject_kind: return std::string(to_string(o.subject_kind));
  }
  return "all";
}

}  // namespace

AccuracyTable compute_accuracy(std::span<const Observation> observations, AccuracyMode mode,
                               GroupBy group_by) {
  if (observations.empty()) throw Error(Errc::invalid_argument, "no observations");
  std::map<std::string, std::pair<Tally, std::array<Tally, kCategoryCount>>> groups;
  for (const auto& o : observations) {
    const auto truth = ground_truth(o);
    if (!truth) {
      throw Error(Errc::invalid_argument,
                  "stimulus " + o.stimulus_id + " has no single ground-truth category");
    }
    auto& [all, per] = groups[group_key(o, group_by)];
    for (auto* t : {&all, &per[static_cast<std::size_t>(index_of(*truth))]}) {
      ++t->trials;
      if (o.response) ++t->answered;
      if (o.response && *o.response == *truth) ++t->correct;
    }
  }
  AccuracyTable table{mode, group_by, {}};
  for (const auto& [name, tallies] : groups) {
    table.rows.push_back(make_row(name, "all", tallies.first, mode));
    for (int c = 0; c < kCategoryCount; ++c) {
      table.rows.push_back(make_row(name, std::string(kCategoryNames[static_cast<std::size_t>(c)]),
                                    tallies.second[static_cast<std::size_t>(c)], mode));
    }
  }
  return table;
}

}  // namespace texshape::metrics
