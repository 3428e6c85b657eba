#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "texshape/trials/plan.hpp"

namespace texshape::trials {

// On-disk layout under root:
//   plans/<plan_id>.json          resolved ExperimentPlan
//   sessions/<session_id>.log.jsonl  append-only event log, one object per line
//   sessions/index.json           compacted session index (atomic rewrite)
//   subjects/<subject_id>.json    exposure set {"subject_id", "exposed": [...]}
//
// Whole-file writes go through a temporary file and rename, so readers never
// see a torn file. Log appends are flushed per event.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  // Writing a plan whose id exists with different content is invalid_state.
  void save_plan(const ExperimentPlan& plan);
  std::optional<ExperimentPlan> load_plan(const std::string& plan_id) const;
  std::vector<std::string> plan_ids() const;

  void append_event(const std::string& session_id, const nlohmann::json& event);
  std::vector<nlohmann::json> read_events(const std::string& session_id) const;
  std::vector<std::string> session_ids() const;

  void write_index(const nlohmann::json& index);
  nlohmann::json read_index() const;

  std::set<std::string> exposure(const std::string& subject_id) const;
  void add_exposure(const std::string& subject_id, const std::set<std::string>& keys);

 private:
  std::filesystem::path plan_path(const std::string& id) const;
  std::filesystem::path log_path(const std::string& id) const;
  std::filesystem::path subject_path(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex file_mutex_;  // guards index and exposure rewrites
};

// Writes text to path via a sibling temporary and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace texshape::trials
