#include "texshape/metrics/curve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "texshape/error.hpp"

namespace texshape::metrics {

namespace {

bool same_level(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Tally {
  std::int64_t trials = 0;
  std::int64_t answered = 0;
  std::int64_t correct = 0;

  std::optional<double> accuracy(AccuracyMode mode) const {
    const auto denom = mode == AccuracyMode::strict ? trials : answered;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(denom);
  }
};

}  // namespace

CurveReport compute_curve(std::span<const Observation> observations, std::string_view kind,
                          std::span<const double> levels, AccuracyMode mode,
                          std::string subject_group) {
  std::vector<const Observation*> rows;
  for (const auto& o : observations) {
    if (o.condition != kind) continue;
    if (!o.level) throw Error(Errc::invalid_argument, "stimulus " + o.stimulus_id + " has no level");
    rows.push_back(&o);
  }
  if (rows.empty()) {
    throw Error(Errc::missing_data, "no observations for distortion '" + std::string(kind) + "'");
  }
  std::vector<double> grid(levels.begin(), levels.end());
  if (grid.empty()) {
    for (const auto* o : rows) {
      if (std::none_of(grid.begin(), grid.end(), [&](double g) { return same_level(g, *o->level); })) {
        grid.push_back(*o->level);
      }
    }
    std::sort(grid.begin(), grid.end());
  }

  std::vector<Tally> totals(grid.size());
  std::vector<std::map<std::string, Tally>> per_subject(grid.size());
  for (const auto* o : rows) {
    const auto it = std::find_if(grid.begin(), grid.end(), [&](double g) { return same_level(g, *o->level); });
    if (it == grid.end()) continue;
    const auto i = static_cast<std::size_t>(it - grid.begin());
    const auto truth = ground_truth(*o);
    if (!truth) throw Error(Errc::invalid_argument, "stimulus " + o->stimulus_id + " has no ground truth");
    for (auto* t : {&totals[i], &per_subject[i][o->subject_id]}) {
      ++t->trials;
      if (o->response) ++t->answered;
      if (o->response && *o->response == *truth) ++t->correct;
    }
  }

  CurveReport report{std::string(kind), std::move(subject_group), mode, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CurvePoint p;
    p.level = grid[i];
    p.n_trials = totals[i].trials;
    p.n_answered = totals[i].answered;
    p.n_correct = totals[i].correct;
    p.accuracy = totals[i].accuracy(mode);
    for (const auto& [_, t] : per_subject[i]) {
      const auto a = t.accuracy(mode);
      if (!a) continue;
      p.band_min = p.band_min ? std::min(*p.band_min, *a) : *a;
      p.band_max = p.band_max ? std::max(*p.band_max, *a) : *a;
    }
    if (p.n_trials == 0) report.missing_levels.push_back(grid[i]);
    report.points.push_back(p);
  }
  return report;
}

}  // namespace texshape::metrics
