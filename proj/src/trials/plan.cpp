#include "texshape/trials/plan.hpp"

#include <filesystem>
#include <unordered_set>

#include "texshape/error.hpp"

namespace texshape::trials {

using nlohmann::json;

std::string_view to_string(Instruction instruction) noexcept {
  switch (instruction) {
    case Instruction::neutral: return "neutral";
    case Instruction::shape: return "shape";
    case Instruction::texture: return "texture";
  }
  return "neutral";
}

std::optional<Instruction> parse_instruction(std::string_view name) noexcept {
  if (name == "neutral") return Instruction::neutral;
  if (name == "shape") return Instruction::shape;
  if (name == "texture") return Instruction::texture;
  return std::nullopt;
}

bool is_valid_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

int ExperimentPlan::block_count() const noexcept {
  const int n = static_cast<int>(stimuli.size());
  if (n == 0) return 0;
  return (n + config.block_size - 1) / config.block_size;
}

namespace {

std::vector<StimulusRecord> load_resolved(const std::string& manifest) {
  const std::filesystem::path path(manifest);
  auto records = read_manifest(path);
  const auto base = path.parent_path();
  for (auto& r : records) {
    const std::filesystem::path p(r.path);
    if (p.is_relative()) r.path = (base / p).lexically_normal().string();
  }
  return records;
}

void check_positive(int value, const char* what) {
  if (value <= 0) {
    throw Error(Errc::invalid_argument, std::string(what) + " must be positive, got " +
                                            std::to_string(value));
  }
}

}  // namespace

void validate(const ExperimentPlan& plan) {
  const auto& c = plan.config;
  if (!is_valid_id(c.id)) throw Error(Errc::invalid_argument, "invalid plan id '" + c.id + "'");
  check_positive(c.durations.fixation_ms, "fixation duration");
  check_positive(c.durations.stimulus_ms, "stimulus duration");
  check_positive(c.durations.mask_ms, "mask duration");
  check_positive(c.durations.response_ms, "response duration");
  check_positive(c.durations.feedback_ms, "feedback duration");
  check_positive(c.block_size, "block_size");
  check_positive(c.practice_block_size, "practice_block_size");
  if (c.practice_trials < 0) throw Error(Errc::invalid_argument, "practice_trials must be >= 0");
  if (!(c.background_grey >= 0.0 && c.background_grey <= 1.0)) {
    throw Error(Errc::invalid_argument, "background_grey must lie in [0, 1]");
  }
  if (plan.stimuli.empty()) throw Error(Errc::invalid_argument, "plan has no stimuli");
  const auto n = static_cast<int>(plan.stimuli.size());
  if (n > c.block_size && n % c.block_size != 0) {
    throw Error(Errc::invalid_argument, std::to_string(n) + " trials do not split into blocks of " +
                                            std::to_string(c.block_size));
  }
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> paths;
  for (const auto& s : plan.stimuli) {
    if (!is_valid_id(s.id)) throw Error(Errc::invalid_argument, "invalid stimulus id '" + s.id + "'");
    if (!ids.insert(s.id).second) {
      throw Error(Errc::invalid_argument, "duplicate stimulus id '" + s.id + "'");
    }
    paths.insert(s.path);
  }
  if (c.practice_trials > 0 && plan.practice_stimuli.empty()) {
    throw Error(Errc::invalid_argument, "practice trials need a non-empty practice manifest");
  }
  for (const auto& s : plan.practice_stimuli) {
    if (!is_valid_id(s.id)) throw Error(Errc::invalid_argument, "invalid stimulus id '" + s.id + "'");
    if (ids.count(s.id) != 0 || paths.count(s.path) != 0) {
      throw Error(Errc::invalid_argument,
                  "practice stimulus '" + s.id + "' overlaps the experiment stimuli");
    }
  }
}

ExperimentPlan create_plan(const PlanConfig& config) {
  ExperimentPlan plan;
  plan.config = config;
  if (config.manifests.empty()) throw Error(Errc::invalid_argument, "plan needs a manifest");
  for (const auto& m : config.manifests) {
    auto records = load_resolved(m);
    plan.stimuli.insert(plan.stimuli.end(), records.begin(), records.end());
  }
  if (config.practice_manifest) plan.practice_stimuli = load_resolved(*config.practice_manifest);
  validate(plan);
  return plan;
}

json to_json(const PlanConfig& c) {
  return json{
      {"id", c.id},
      {"manifests", c.manifests},
      {"practice_manifest", c.practice_manifest ? json(*c.practice_manifest) : json(nullptr)},
      {"instruction", std::string(to_string(c.instruction))},
      {"durations",
       {{"fixation_ms", c.durations.fixation_ms},
        {"stimulus_ms", c.durations.stimulus_ms},
        {"mask_ms", c.durations.mask_ms},
        {"response_ms", c.durations.response_ms},
        {"feedback_ms", c.durations.feedback_ms}}},
      {"block_size", c.block_size},
      {"practice_trials", c.practice_trials},
      {"practice_block_size", c.practice_block_size},
      {"background_grey", c.background_grey},
  };
}

PlanConfig plan_config_from_json(const json& j) {
  try {
    PlanConfig c;
    c.id = j.at("id").get<std::string>();
    if (j.contains("manifests")) c.manifests = j.at("manifests").get<std::vector<std::string>>();
    if (j.contains("practice_manifest") && !j.at("practice_manifest").is_null()) {
      c.practice_manifest = j.at("practice_manifest").get<std::string>();
    }
    if (j.contains("instruction")) {
      const auto name = j.at("instruction").get<std::string>();
      const auto ins = parse_instruction(name);
      if (!ins) throw Error(Errc::parse_error, "unknown instruction '" + name + "'");
      c.instruction = *ins;
    }
    if (j.contains("durations")) {
      const auto& d = j.at("durations");
      c.durations.fixation_ms = d.value("fixation_ms", c.durations.fixation_ms);
      c.durations.stimulus_ms = d.value("stimulus_ms", c.durations.stimulus_ms);
      c.durations.mask_ms = d.value("mask_ms", c.durations.mask_ms);
      c.durations.response_ms = d.value("response_ms", c.durations.response_ms);
      c.durations.feedback_ms = d.value("feedback_ms", c.durations.feedback_ms);
    }
    c.block_size = j.value("block_size", c.block_size);
    c.practice_trials = j.value("practice_trials", c.practice_trials);
    c.practice_block_size = j.value("practice_block_size", c.practice_block_size);
    c.background_grey = j.value("background_grey", c.background_grey);
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("plan config: ") + e.what());
  }
}

json to_json(const ExperimentPlan& plan) {
  json stimuli = json::array();
  for (const auto& s : plan.stimuli) stimuli.push_back(to_json(s));
  json practice = json::array();
  for (const auto& s : plan.practice_stimuli) practice.push_back(to_json(s));
  return json{{"config", to_json(plan.config)}, {"stimuli", stimuli}, {"practice_stimuli", practice}};
}

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  try {
    plan.config = plan_config_from_json(j.at("config"));
    for (const auto& s : j.at("stimuli")) plan.stimuli.push_back(stimulus_from_json(s));
    for (const auto& s : j.at("practice_stimuli")) {
      plan.practice_stimuli.push_back(stimulus_from_json(s));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("plan: ") + e.what());
  }
  validate(plan);
  return plan;
}

}  // namespace texshape::trials
