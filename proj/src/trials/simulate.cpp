#include "texshape/trials/simulate.hpp"

#include <fstream>
#include <sstream>

#include "texshape/error.hpp"

namespace texshape::trials {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  return out;
}

}  // namespace

std::vector<TrialRecord> run_simulated_observer(const ExperimentPlan& plan,
                                                const DecisionTable& decisions,
                                                const std::string& subject_id) {
  if (!is_valid_id(subject_id)) throw Error(Errc::invalid_argument, "invalid subject id '" + subject_id + "'");
  std::vector<std::string> missing;
  for (const auto& s : plan.stimuli) {
    if (decisions.count(s.id) == 0) missing.push_back(s.id);
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " stimuli lack a decision:";
    for (std::size_t i = 0; i < missing.size() && i < 5; ++i) msg += " " + missing[i];
    throw Error(Errc::missing_data, msg);
  }
  std::vector<TrialRecord> out;
  out.reserve(plan.stimuli.size());
  const auto session_id = "sim." + plan.id() + "." + subject_id;
  for (std::size_t i = 0; i < plan.stimuli.size(); ++i) {
    const auto& s = plan.stimuli[i];
    TrialRecord r;
    r.session_id = session_id;
    r.subject_id = subject_id;
    r.subject_kind = SubjectKind::machine;
    r.trial_index = static_cast<std::int64_t>(i);
    r.phase = TrialPhase::main;
    r.stimulus_id = s.id;
    r.condition = s.condition;
    r.shape_category = s.shape_category;
    r.texture_category = s.texture_category;
    r.distortion = s.distortion;
    r.response = decisions.at(s.id);
    out.push_back(std::move(r));
  }
  return out;
}

DecisionTable load_decisions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  DecisionTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_csv(line);
    if (f.empty() || (f.size() == 1 && f[0].empty())) continue;
    if (lineno == 1 && f[0] == "stimulus_id") continue;
    if (f.size() != 2) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": expected 2 fields");
    }
    const auto c = parse_category(f[1]);
    if (!c) {
      throw Error(Errc::parse_error,
                  path.string() + ":" + std::to_string(lineno) + ": unknown category '" + f[1] + "'");
    }
    if (!table.emplace(f[0], *c).second) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": duplicate '" + f[0] + "'");
    }
  }
  return table;
}

DecisionTable decisions_from_probabilities(const std::filesystem::path& path,
                                           const ClassMapping& mapping, Aggregation aggregation) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  DecisionTable table;
  std::string line;
  int lineno = 0;
  std::vector<double> probs;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_csv(line);
    if (f.empty() || (f.size() == 1 && f[0].empty())) continue;
    if (lineno == 1 && f[0] == "stimulus_id") continue;
    if (f.size() != mapping.size() + 1) {
      throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": expected " +
                                         std::to_string(mapping.size()) + " probabilities");
    }
    probs.assign(f.size() - 1, 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
      try {
        std::size_t used = 0;
        probs[i - 1] = std::stod(f[i], &used);
        if (used != f[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, path.string() + ":" + std::to_string(lineno) + ": bad number '" + f[i] + "'");
      }
    }
    table[f[0]] = decide_16(probs, mapping, aggregation).category;
  }
  return table;
}

DrivenSession drive_session(TrialEngine& engine, ManualClock& clock, const std::string& plan_id,
                            const std::string& subject_id, std::uint64_t seed,
                            const Responder& responder, SubjectKind kind) {
  DrivenSession run;
  run.session_id = engine.open_session(plan_id, subject_id, seed, kind);
  while (true) {
    auto item = engine.next_trial(run.session_id);
    if (std::holds_alternative<FinishedMarker>(item)) break;
    if (const auto* b = std::get_if<BreakMarker>(&item)) {
      run.breaks.push_back(b->trials_completed);
      continue;
    }
    const auto& spec = std::get<TrialSpec>(item);
    const auto total = total_duration_ms(spec.phases);
    run.trial_durations_ms.push_back(total);
    if (const auto answer = responder(spec)) {
      int onset = 0;
      for (const auto& p : spec.phases) {
        if (p.name == "response") break;
        onset += p.duration_ms;
      }
      const auto rt = answer->second;
      clock.set(spec.presented_at + onset + static_cast<std::int64_t>(rt));
      engine.record_response(run.session_id, spec.trial_index, answer->first, rt);
    }
    clock.set(spec.presented_at + total);
  }
  run.records = engine.export_records(run.session_id);
  return run;
}

}  // namespace texshape::trials
