#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "texshape/trials/plan.hpp"
#include "texshape/trials/records.hpp"
#include "texshape/trials/store.hpp"

namespace texshape::trials {

// Millisecond wall clock used for presented_at and window checks.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() override;
};

class ManualClock final : public Clock {
 public:
  explicit ManualClock(std::int64_t start_ms = 0) : now_(start_ms) {}
  std::int64_t now_ms() override { return now_.load(); }
  void advance(std::int64_t ms) { now_ += ms; }
  void set(std::int64_t ms) { now_ = ms; }

 private:
  std::atomic<std::int64_t> now_;
};

enum class SessionState { practice, running, on_break, finished };

std::string_view to_string(SessionState state) noexcept;

struct Phase {
  std::string name;  // fixation, stimulus, mask, response, feedback
  int duration_ms;

  friend bool operator==(const Phase&, const Phase&) = default;
};

// Phase schedule of one trial; practice trials end with a feedback phase.
std::vector<Phase> phase_schedule(const PhaseDurations& durations, TrialPhase phase);
int total_duration_ms(const std::vector<Phase>& phases);

struct TrialSpec {
  std::string session_id;
  std::int64_t trial_index = 0;  // 0-based over the whole session, practice first
  TrialPhase phase = TrialPhase::main;
  int block = 0;  // 0-based block within the phase
  StimulusRecord stimulus;
  std::string mask_id;
  std::vector<Phase> phases;
  Instruction instruction = Instruction::neutral;
  double background_grey = kBackgroundGrey;
  std::int64_t presented_at = 0;
};

// Returned instead of a trial at a block boundary; the next call resumes.
struct BreakMarker {
  std::string session_id;
  TrialPhase completed_phase = TrialPhase::main;
  std::int64_t trials_completed = 0;  // over the whole session
  std::int64_t trials_total = 0;
  // Running performance over closed trials of the phase just completed.
  std::int64_t answered = 0;
  std::int64_t correct = 0;
};

struct FinishedMarker {
  std::string session_id;
  std::int64_t trials_total = 0;
};

using NextItem = std::variant<TrialSpec, BreakMarker, FinishedMarker>;

struct OpenTrial {
  std::int64_t trial_index = 0;
  std::int64_t presented_at = 0;
  std::string mask_id;
  std::optional<Category> response;
  std::optional<double> reaction_time_ms;
  bool timing_flag = false;
};

struct ScheduledTrial {
  TrialPhase phase = TrialPhase::main;
  std::string stimulus_id;
};

// Full session state, a pure function of the event log and the plan.
struct SessionData {
  std::string id;
  std::string plan_id;
  std::string subject_id;
  SubjectKind subject_kind = SubjectKind::human;
  std::uint64_t seed = 0;
  std::vector<ScheduledTrial> schedule;
  std::int64_t cursor = 0;  // next trial to present
  SessionState state = SessionState::practice;
  std::optional<OpenTrial> open;
  std::int64_t last_break_at = -1;  // cursor value where the last break was emitted
  std::vector<TrialRecord> records;  // closed trials in order

  std::int64_t practice_count() const noexcept;
};

// Canonical serialisation; keys sorted, so equal states give equal bytes.
nlohmann::json to_json(const SessionData& session);

// Whether the response counts as correct for running performance: matches
// the shape category, or the texture category for texture-only and
// cue-conflict stimuli.
bool is_correct(const TrialRecord& record) noexcept;

// Keys recorded in a subject's exposure set when a session finishes: the
// stimulus id, plus "silhouette:<source>" for silhouette-derived stimuli.
std::vector<std::string> exposure_keys(const StimulusRecord& stimulus);

struct EngineOptions {
  // Server-side slack after the nominal trial end during which responses are
  // still accepted, to absorb network latency of the final post.
  std::int64_t response_grace_ms = 1000;
  // |click - onset - rt| beyond this sets timing_flag (one frame at 120 Hz).
  double timing_tolerance_ms = 8.3;
};

// Event-sourced trial scheduler. Every mutation appends an event to the
// session log first and then applies it through the same code path replay
// uses. Sessions are single-writer (per-session mutex); the registry allows
// concurrent readers.
class TrialEngine {
 public:
  TrialEngine(SessionStore& store, Clock& clock, EngineOptions options = {});

  // Validates and persists. Re-posting an identical plan is a no-op.
  const ExperimentPlan& add_plan(const ExperimentPlan& plan);
  std::optional<ExperimentPlan> plan(const std::string& plan_id) const;

  // Opens session "<plan>.<subject>.<n>". Fails with invalid_state when the
  // subject has an unfinished session on the plan; stimuli in the subject's
  // exposure set are dropped.
  std::string open_session(const std::string& plan_id, const std::string& subject_id,
                           std::uint64_t seed, SubjectKind kind = SubjectKind::human);

  NextItem next_trial(const std::string& session_id);

  // Updates the pending response of the open trial. Returns the record as it
  // would be frozen now.
  TrialRecord record_response(const std::string& session_id, std::int64_t trial_index,
                              std::optional<Category> response,
                              std::optional<double> reaction_time_ms,
                              std::optional<double> onset_ts = std::nullopt,
                              std::optional<double> click_ts = std::nullopt);

  std::vector<TrialRecord> export_records(const std::string& session_id) const;
  SessionData snapshot(const std::string& session_id) const;
  std::vector<std::string> session_ids() const;

  // Resolves a stimulus id over all registered plans.
  std::optional<StimulusRecord> find_stimulus(const std::string& stimulus_id) const;

  // Rebuilds a session from its events.
  static SessionData replay(const ExperimentPlan& plan, const std::vector<nlohmann::json>& events);

 private:
  struct Slot {
    std::mutex mutex;
    SessionData data;
  };
  struct PlanEntry;  // plan plus id lookup tables

  std::shared_ptr<Slot> slot(const std::string& session_id) const;
  std::shared_ptr<const PlanEntry> entry(const std::string& plan_id) const;
  void commit(Slot& slot, const nlohmann::json& event);
  void close_open_trial(Slot& slot, std::int64_t at);
  void update_index(const SessionData& data);

  SessionStore& store_;
  Clock& clock_;
  EngineOptions options_;

  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<const PlanEntry>> plans_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex open_mutex_;   // serialises open_session
  std::mutex index_mutex_;  // guards index_entries_ and the index file
  std::map<std::string, nlohmann::json> index_entries_;
};

// Mask ids are "m" followed by 16 hex digits; the image is a deterministic
// function of the id.
std::string make_mask_id(std::uint64_t seed, const std::string& session_id,
                         std::int64_t trial_index);
ImageBuffer render_mask(const std::string& mask_id, int size = kStimulusSize);

}  // namespace texshape::trials
