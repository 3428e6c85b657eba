#include "texshape/trials/engine.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "texshape/error.hpp"
#include "texshape/imgcore/rng.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape::trials {

using nlohmann::json;

std::int64_t SystemClock::now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string_view to_string(SessionState state) noexcept {
  switch (state) {
    case SessionState::practice: return "practice";
    case SessionState::running: return "running";
    case SessionState::on_break: return "on-break";
    case SessionState::finished: return "finished";
  }
  return "running";
}

std::vector<Phase> phase_schedule(const PhaseDurations& d, TrialPhase phase) {
  std::vector<Phase> phases{{"fixation", d.fixation_ms},
                            {"stimulus", d.stimulus_ms},
                            {"mask", d.mask_ms},
                            {"response", d.response_ms}};
  if (phase == TrialPhase::practice) phases.push_back({"feedback", d.feedback_ms});
  return phases;
}

int total_duration_ms(const std::vector<Phase>& phases) {
  int total = 0;
  for (const auto& p : phases) total += p.duration_ms;
  return total;
}

std::int64_t SessionData::practice_count() const noexcept {
  std::int64_t n = 0;
  for (const auto& t : schedule) n += t.phase == TrialPhase::practice ? 1 : 0;
  return n;
}

bool is_correct(const TrialRecord& r) noexcept {
  if (!r.response) return false;
  if (r.shape_category && *r.response == *r.shape_category) return true;
  const bool texture_counts = r.condition == StimulusCondition::texture || is_cue_conflict(r.condition);
  return texture_counts && r.texture_category && *r.response == *r.texture_category;
}

std::vector<std::string> exposure_keys(const StimulusRecord& s) {
  std::vector<std::string> keys{s.id};
  const bool silhouette_based = s.condition == StimulusCondition::silhouette ||
                                s.condition == StimulusCondition::cue_conflict_filled_silhouette;
  if (silhouette_based && s.source_content) keys.push_back("silhouette:" + *s.source_content);
  return keys;
}

std::string make_mask_id(std::uint64_t seed, const std::string& session_id,
                         std::int64_t trial_index) {
  RngStream rng(seed, "mask:" + session_id + ":" + std::to_string(trial_index));
  char buf[24];
  std::snprintf(buf, sizeof buf, "m%016llx", static_cast<unsigned long long>(rng.next_u64()));
  return buf;
}

ImageBuffer render_mask(const std::string& mask_id, int size) {
  if (mask_id.size() != 17 || mask_id[0] != 'm') {
    throw Error(Errc::invalid_argument, "malformed mask id '" + mask_id + "'");
  }
  std::uint64_t value = 0;
  for (std::size_t i = 1; i < mask_id.size(); ++i) {
    const char c = mask_id[i];
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else throw Error(Errc::invalid_argument, "malformed mask id '" + mask_id + "'");
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  RngStream rng(value, "pink-mask");
  return pink_noise_mask(size, rng);
}

namespace {

// Stimulus lookup for one plan.
struct PlanLookup {
  explicit PlanLookup(const ExperimentPlan& p) : plan(&p) {
    for (std::size_t i = 0; i < p.stimuli.size(); ++i) main.emplace(p.stimuli[i].id, i);
    for (std::size_t i = 0; i < p.practice_stimuli.size(); ++i) {
      practice.emplace(p.practice_stimuli[i].id, i);
    }
  }

  const StimulusRecord& get(TrialPhase phase, const std::string& id) const {
    const auto& table = phase == TrialPhase::practice ? practice : main;
    const auto it = table.find(id);
    if (it == table.end()) {
      throw Error(Errc::corrupt_data, "stimulus '" + id + "' is not in plan " + plan->id());
    }
    return phase == TrialPhase::practice ? plan->practice_stimuli[it->second]
                                         : plan->stimuli[it->second];
  }

  const ExperimentPlan* plan;
  std::unordered_map<std::string, std::size_t> main;
  std::unordered_map<std::string, std::size_t> practice;
};

std::optional<Category> category_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  const auto c = parse_category(j.get<std::string>());
  if (!c) throw Error(Errc::corrupt_data, "unknown category in event log");
  return c;
}

json category_json(const std::optional<Category>& c) {
  return c ? json(std::string(to_string(*c))) : json(nullptr);
}

TrialRecord build_record(const SessionData& s, const PlanLookup& lookup, const OpenTrial& open) {
  const auto& sched = s.schedule.at(static_cast<std::size_t>(open.trial_index));
  const auto& stim = lookup.get(sched.phase, sched.stimulus_id);
  TrialRecord r;
  r.session_id = s.id;
  r.subject_id = s.subject_id;
  r.subject_kind = s.subject_kind;
  r.trial_index = open.trial_index;
  r.phase = sched.phase;
  r.stimulus_id = stim.id;
  r.condition = stim.condition;
  r.shape_category = stim.shape_category;
  r.texture_category = stim.texture_category;
  r.distortion = stim.distortion;
  r.presented_at = open.presented_at;
  r.response = open.response;
  r.reaction_time_ms = open.reaction_time_ms;
  r.timing_flag = open.timing_flag;
  return r;
}

void apply_event(SessionData& s, const PlanLookup& lookup, const json& e) {
  const auto type = e.at("type").get<std::string>();
  if (type == "opened") {
    s.id = e.at("session_id").get<std::string>();
    s.plan_id = e.at("plan_id").get<std::string>();
    s.subject_id = e.at("subject_id").get<std::string>();
    const auto kind = parse_subject_kind(e.at("subject_kind").get<std::string>());
    if (!kind) throw Error(Errc::corrupt_data, "bad subject_kind in event log");
    s.subject_kind = *kind;
    s.seed = e.at("seed").get<std::uint64_t>();
    s.schedule.clear();
    for (const auto& id : e.at("practice")) s.schedule.push_back({TrialPhase::practice, id.get<std::string>()});
    for (const auto& id : e.at("main")) s.schedule.push_back({TrialPhase::main, id.get<std::string>()});
    s.state = s.practice_count() > 0 ? SessionState::practice : SessionState::running;
  } else if (type == "presented") {
    const auto idx = e.at("trial_index").get<std::int64_t>();
    if (idx != s.cursor || s.open) throw Error(Errc::corrupt_data, "presentation out of order");
    s.open = OpenTrial{idx, e.at("at").get<std::int64_t>(), e.at("mask_id").get<std::string>(),
                       std::nullopt, std::nullopt, false};
    s.state = s.schedule.at(static_cast<std::size_t>(idx)).phase == TrialPhase::practice
                  ? SessionState::practice
                  : SessionState::running;
    ++s.cursor;
  } else if (type == "response") {
    if (!s.open || s.open->trial_index != e.at("trial_index").get<std::int64_t>()) {
      throw Error(Errc::corrupt_data, "response for a trial that is not open");
    }
    s.open->response = category_or_null(e.at("response"));
    s.open->reaction_time_ms =
        e.at("rt_ms").is_null() ? std::nullopt : std::optional<double>(e.at("rt_ms").get<double>());
    s.open->timing_flag = e.at("timing_flag").get<bool>();
  } else if (type == "closed") {
    if (!s.open || s.open->trial_index != e.at("trial_index").get<std::int64_t>()) {
      throw Error(Errc::corrupt_data, "close for a trial that is not open");
    }
    s.records.push_back(build_record(s, lookup, *s.open));
    s.open.reset();
  } else if (type == "break") {
    s.last_break_at = s.cursor;
    s.state = SessionState::on_break;
  } else if (type == "finished") {
    s.state = SessionState::finished;
  } else {
    throw Error(Errc::corrupt_data, "unknown event type '" + type + "'");
  }
}

bool is_break_boundary(const SessionData& s, const PlanConfig& c) {
  const auto n = static_cast<std::int64_t>(s.schedule.size());
  const auto p = s.practice_count();
  const auto k = s.cursor;
  if (k <= 0 || k >= n) return false;
  if (k < p) return k % c.practice_block_size == 0;
  if (k == p) return true;
  return (k - p) % c.block_size == 0;
}

json index_entry(const SessionData& s) {
  return json{{"plan_id", s.plan_id},
              {"subject_id", s.subject_id},
              {"subject_kind", std::string(to_string(s.subject_kind))},
              {"state", std::string(to_string(s.state))},
              {"cursor", s.cursor},
              {"trials", s.schedule.size()},
              {"closed", s.records.size()}};
}

std::vector<std::size_t> draw_with_reshuffle(std::size_t pool, std::size_t count, RngStream& rng) {
  std::vector<std::size_t> out;
  if (pool == 0) return out;
  std::vector<std::size_t> order(pool);
  std::size_t pos = pool;
  while (out.size() < count) {
    if (pos == pool) {
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(std::span<std::size_t>(order));
      pos = 0;
    }
    out.push_back(order[pos++]);
  }
  return out;
}

}  // namespace

struct TrialEngine::PlanEntry {
  explicit PlanEntry(ExperimentPlan p) : plan(std::move(p)), lookup(plan) {}
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;

  ExperimentPlan plan;
  PlanLookup lookup;
};

json to_json(const SessionData& s) {
  json schedule = json::array();
  for (const auto& t : s.schedule) {
    schedule.push_back({{"phase", std::string(to_string(t.phase))}, {"stimulus_id", t.stimulus_id}});
  }
  json records = json::array();
  for (const auto& r : s.records) records.push_back(to_json(r));
  json open = nullptr;
  if (s.open) {
    open = {{"trial_index", s.open->trial_index},
            {"presented_at", s.open->presented_at},
            {"mask_id", s.open->mask_id},
            {"response", category_json(s.open->response)},
            {"rt_ms", s.open->reaction_time_ms ? json(*s.open->reaction_time_ms) : json(nullptr)},
            {"timing_flag", s.open->timing_flag}};
  }
  return json{{"id", s.id},
              {"plan_id", s.plan_id},
              {"subject_id", s.subject_id},
              {"subject_kind", std::string(to_string(s.subject_kind))},
              {"seed", s.seed},
              {"schedule", schedule},
              {"cursor", s.cursor},
              {"state", std::string(to_string(s.state))},
              {"open", open},
              {"last_break_at", s.last_break_at},
              {"records", records}};
}

TrialEngine::TrialEngine(SessionStore& store, Clock& clock, EngineOptions options)
    : store_(store), clock_(clock), options_(options) {
  for (const auto& id : store_.plan_ids()) {
    if (auto p = store_.load_plan(id)) plans_.emplace(id, std::make_shared<const PlanEntry>(std::move(*p)));
  }
  for (const auto& sid : store_.session_ids()) {
    const auto events = store_.read_events(sid);
    if (events.empty()) continue;
    const auto plan_id = events.front().at("plan_id").get<std::string>();
    const auto it = plans_.find(plan_id);
    if (it == plans_.end()) throw Error(Errc::corrupt_data, "session " + sid + " refers to unknown plan");
    auto slot = std::make_shared<Slot>();
    slot->data = replay(it->second->plan, events);
    if (slot->data.state == SessionState::finished) {
      // Idempotent; repairs a crash between the finished event and the exposure write.
      std::set<std::string> keys;
      for (const auto& t : slot->data.schedule) {
        if (t.phase != TrialPhase::main) continue;
        for (auto& k : exposure_keys(it->second->lookup.get(t.phase, t.stimulus_id))) keys.insert(std::move(k));
      }
      store_.add_exposure(slot->data.subject_id, keys);
    }
    index_entries_[sid] = index_entry(slot->data);
    sessions_.emplace(sid, std::move(slot));
  }
  if (!sessions_.empty()) store_.write_index(json(index_entries_));
}

const ExperimentPlan& TrialEngine::add_plan(const ExperimentPlan& plan) {
  validate(plan);
  std::unique_lock lock(registry_mutex_);
  if (const auto it = plans_.find(plan.id()); it != plans_.end()) {
    if (it->second->plan == plan) return it->second->plan;
    throw Error(Errc::invalid_state, "plan '" + plan.id() + "' already exists with different content");
  }
  store_.save_plan(plan);
  return plans_.emplace(plan.id(), std::make_shared<const PlanEntry>(plan)).first->second->plan;
}

std::optional<ExperimentPlan> TrialEngine::plan(const std::string& plan_id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = plans_.find(plan_id);
  if (it == plans_.end()) return std::nullopt;
  return it->second->plan;
}

std::shared_ptr<const TrialEngine::PlanEntry> TrialEngine::entry(const std::string& plan_id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = plans_.find(plan_id);
  if (it == plans_.end()) throw Error(Errc::not_found, "no plan '" + plan_id + "'");
  return it->second;
}

std::shared_ptr<TrialEngine::Slot> TrialEngine::slot(const std::string& session_id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(Errc::not_found, "no session '" + session_id + "'");
  return it->second;
}

std::string TrialEngine::open_session(const std::string& plan_id, const std::string& subject_id,
                                      std::uint64_t seed, SubjectKind kind) {
  if (!is_valid_id(subject_id)) throw Error(Errc::invalid_argument, "invalid subject id '" + subject_id + "'");
  std::lock_guard open_lock(open_mutex_);
  const auto pe = entry(plan_id);
  const auto& p = pe->plan;

  std::vector<std::pair<std::string, std::shared_ptr<Slot>>> existing;
  {
    std::shared_lock lock(registry_mutex_);
    existing.assign(sessions_.begin(), sessions_.end());
  }
  int prior = 0;
  for (const auto& [sid, s] : existing) {
    std::lock_guard slot_lock(s->mutex);
    if (s->data.plan_id != plan_id || s->data.subject_id != subject_id) continue;
    ++prior;
    if (s->data.state != SessionState::finished) {
      throw Error(Errc::invalid_state, "subject '" + subject_id + "' has unfinished session " + sid);
    }
  }
  const auto session_id = plan_id + "." + subject_id + "." + std::to_string(prior + 1);

  const auto exposed = store_.exposure(subject_id);
  std::vector<std::size_t> main;
  for (std::size_t i = 0; i < p.stimuli.size(); ++i) {
    bool seen = false;
    for (const auto& k : exposure_keys(p.stimuli[i])) seen = seen || exposed.count(k) != 0;
    if (!seen) main.push_back(i);
  }
  if (main.empty()) {
    throw Error(Errc::invalid_state, "subject '" + subject_id + "' has seen every stimulus of " + plan_id);
  }
  RngStream order_rng(seed, "order:" + plan_id + ":" + subject_id);
  order_rng.shuffle(std::span<std::size_t>(main));
  RngStream practice_rng(seed, "practice:" + plan_id + ":" + subject_id);
  const auto practice = draw_with_reshuffle(p.practice_stimuli.size(),
                                            static_cast<std::size_t>(p.config.practice_trials), practice_rng);

  json practice_ids = json::array();
  for (auto i : practice) practice_ids.push_back(p.practice_stimuli[i].id);
  json main_ids = json::array();
  for (auto i : main) main_ids.push_back(p.stimuli[i].id);

  auto s = std::make_shared<Slot>();
  std::lock_guard slot_lock(s->mutex);
  {
    std::unique_lock lock(registry_mutex_);
    sessions_.emplace(session_id, s);
  }
  commit(*s, json{{"type", "opened"},
                  {"session_id", session_id},
                  {"plan_id", plan_id},
                  {"subject_id", subject_id},
                  {"subject_kind", std::string(to_string(kind))},
                  {"seed", seed},
                  {"at", clock_.now_ms()},
                  {"practice", practice_ids},
                  {"main", main_ids}});
  update_index(s->data);
  return session_id;
}

void TrialEngine::commit(Slot& slot, const json& event) {
  const std::string sid =
      event.at("type") == "opened" ? event.at("session_id").get<std::string>() : slot.data.id;
  const std::string plan_id =
      event.at("type") == "opened" ? event.at("plan_id").get<std::string>() : slot.data.plan_id;
  const auto pe = entry(plan_id);
  store_.append_event(sid, event);
  apply_event(slot.data, pe->lookup, event);
}

void TrialEngine::close_open_trial(Slot& slot, std::int64_t at) {
  commit(slot, json{{"type", "closed"}, {"trial_index", slot.data.open->trial_index}, {"at", at}});
}

void TrialEngine::update_index(const SessionData& data) {
  std::lock_guard lock(index_mutex_);
  index_entries_[data.id] = index_entry(data);
  store_.write_index(json(index_entries_));
}

NextItem TrialEngine::next_trial(const std::string& session_id) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  auto& d = s->data;
  if (d.state == SessionState::finished) {
    throw Error(Errc::invalid_state, "session " + session_id + " is finished");
  }
  const auto pe = entry(d.plan_id);
  const auto& config = pe->plan.config;
  const auto now = clock_.now_ms();

  if (d.open) {
    const auto phase = d.schedule.at(static_cast<std::size_t>(d.open->trial_index)).phase;
    const auto ends = d.open->presented_at + total_duration_ms(phase_schedule(config.durations, phase));
    if (now < ends) {
      throw Error(Errc::invalid_state, "trial " + std::to_string(d.open->trial_index) +
                                           " is still running for " + std::to_string(ends - now) + " ms");
    }
    close_open_trial(*s, now);
  }

  const auto n = static_cast<std::int64_t>(d.schedule.size());
  if (d.cursor >= n) {
    commit(*s, json{{"type", "finished"}, {"at", now}});
    std::set<std::string> keys;
    for (const auto& t : d.schedule) {
      if (t.phase != TrialPhase::main) continue;
      for (auto& k : exposure_keys(pe->lookup.get(t.phase, t.stimulus_id))) keys.insert(std::move(k));
    }
    store_.add_exposure(d.subject_id, keys);
    update_index(d);
    return FinishedMarker{d.id, n};
  }

  if (d.last_break_at != d.cursor && is_break_boundary(d, config)) {
    commit(*s, json{{"type", "break"}, {"at", now}});
    update_index(d);
    BreakMarker m;
    m.session_id = d.id;
    m.completed_phase = d.schedule.at(static_cast<std::size_t>(d.cursor - 1)).phase;
    m.trials_completed = d.cursor;
    m.trials_total = n;
    for (const auto& r : d.records) {
      if (r.phase != m.completed_phase) continue;
      m.answered += r.response ? 1 : 0;
      m.correct += is_correct(r) ? 1 : 0;
    }
    return m;
  }

  const auto index = d.cursor;
  const auto mask_id = make_mask_id(d.seed, d.id, index);
  const bool resumed = d.state == SessionState::on_break;
  commit(*s, json{{"type", "presented"}, {"trial_index", index}, {"at", now}, {"mask_id", mask_id}});
  if (resumed) update_index(d);

  const auto& sched = d.schedule.at(static_cast<std::size_t>(index));
  TrialSpec spec;
  spec.session_id = d.id;
  spec.trial_index = index;
  spec.phase = sched.phase;
  const auto within = sched.phase == TrialPhase::practice ? index : index - d.practice_count();
  spec.block = static_cast<int>(within / (sched.phase == TrialPhase::practice ? config.practice_block_size
                                                                              : config.block_size));
  spec.stimulus = pe->lookup.get(sched.phase, sched.stimulus_id);
  spec.mask_id = mask_id;
  spec.phases = phase_schedule(config.durations, sched.phase);
  spec.instruction = config.instruction;
  spec.background_grey = config.background_grey;
  spec.presented_at = now;
  return spec;
}

TrialRecord TrialEngine::record_response(const std::string& session_id, std::int64_t trial_index,
                                         std::optional<Category> response,
                                         std::optional<double> reaction_time_ms,
                                         std::optional<double> onset_ts,
                                         std::optional<double> click_ts) {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  auto& d = s->data;
  if (!d.open || d.open->trial_index != trial_index) {
    if (trial_index >= 0 && trial_index < static_cast<std::int64_t>(d.records.size())) {
      throw Error(Errc::invalid_state, "trial " + std::to_string(trial_index) + " is frozen");
    }
    throw Error(Errc::not_found, "trial " + std::to_string(trial_index) + " is not open in session " +
                                     session_id);
  }
  const auto pe = entry(d.plan_id);
  const auto& dur = pe->plan.config.durations;
  const auto now = clock_.now_ms();
  const auto window_close = d.open->presented_at + dur.response_onset_ms() + dur.response_ms;
  if (now > window_close + options_.response_grace_ms) {
    close_open_trial(*s, now);
    throw Error(Errc::invalid_state, "trial " + std::to_string(trial_index) + " is frozen");
  }
  if (response.has_value() != reaction_time_ms.has_value()) {
    throw Error(Errc::invalid_argument, "response and rt_ms must be given together");
  }
  if (reaction_time_ms && !(*reaction_time_ms > 0.0 && *reaction_time_ms <= dur.response_ms)) {
    throw Error(Errc::invalid_argument, "rt_ms " + std::to_string(*reaction_time_ms) +
                                            " outside the response window (0, " +
                                            std::to_string(dur.response_ms) + "]");
  }
  bool flag = false;
  if (reaction_time_ms && onset_ts && click_ts) {
    flag = std::abs(*click_ts - *onset_ts - *reaction_time_ms) > options_.timing_tolerance_ms;
  }
  commit(*s, json{{"type", "response"},
                  {"trial_index", trial_index},
                  {"at", now},
                  {"response", category_json(response)},
                  {"rt_ms", reaction_time_ms ? json(*reaction_time_ms) : json(nullptr)},
                  {"timing_flag", flag}});
  return build_record(d, pe->lookup, *d.open);
}

std::vector<TrialRecord> TrialEngine::export_records(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->data.records;
}

SessionData TrialEngine::snapshot(const std::string& session_id) const {
  auto s = slot(session_id);
  std::lock_guard lock(s->mutex);
  return s->data;
}

std::vector<std::string> TrialEngine::session_ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

std::optional<StimulusRecord> TrialEngine::find_stimulus(const std::string& stimulus_id) const {
  std::shared_lock lock(registry_mutex_);
  for (const auto& [_, pe] : plans_) {
    for (const auto* pool : {&pe->plan.stimuli, &pe->plan.practice_stimuli}) {
      for (const auto& s : *pool) {
        if (s.id == stimulus_id) return s;
      }
    }
  }
  return std::nullopt;
}

SessionData TrialEngine::replay(const ExperimentPlan& plan, const std::vector<json>& events) {
  const PlanLookup lookup(plan);
  SessionData data;
  for (const auto& e : events) apply_event(data, lookup, e);
  return data;
}

}  // namespace texshape::trials
