#include "texshape/trials/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "texshape/error.hpp"

namespace texshape::trials {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kLogSuffix = ".log.jsonl";

void require_id(const std::string& id, const char* what) {
  if (!is_valid_id(id)) throw Error(Errc::invalid_argument, std::string("invalid ") + what + " '" + id + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_file(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::corrupt_data, path.string() + ": " + e.what());
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io_error, "rename to " + path.string() + ": " + ec.message());
}

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"plans", "sessions", "subjects"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) throw Error(Errc::io_error, "cannot create " + (root_ / sub).string() + ": " + ec.message());
  }
}

fs::path SessionStore::plan_path(const std::string& id) const {
  require_id(id, "plan id");
  return root_ / "plans" / (id + ".json");
}

fs::path SessionStore::log_path(const std::string& id) const {
  require_id(id, "session id");
  return root_ / "sessions" / (id + std::string(kLogSuffix));
}

fs::path SessionStore::subject_path(const std::string& id) const {
  require_id(id, "subject id");
  return root_ / "subjects" / (id + ".json");
}

void SessionStore::save_plan(const ExperimentPlan& plan) {
  const auto path = plan_path(plan.id());
  std::lock_guard lock(file_mutex_);
  if (fs::exists(path)) {
    if (plan_from_json(parse_file(path)) == plan) return;
    throw Error(Errc::invalid_state, "plan '" + plan.id() + "' already exists with different content");
  }
  write_file_atomic(path, to_json(plan).dump(2) + "\n");
}

std::optional<ExperimentPlan> SessionStore::load_plan(const std::string& plan_id) const {
  const auto path = plan_path(plan_id);
  if (!fs::exists(path)) return std::nullopt;
  return plan_from_json(parse_file(path));
}

std::vector<std::string> SessionStore::plan_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : fs::directory_iterator(root_ / "plans")) {
    if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void SessionStore::append_event(const std::string& session_id, const json& event) {
  std::ofstream out(log_path(session_id), std::ios::app | std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot append to log of session " + session_id);
  out << event.dump() << '\n';
  out.flush();
  if (!out) throw Error(Errc::io_error, "append failed for session " + session_id);
}

std::vector<json> SessionStore::read_events(const std::string& session_id) const {
  const auto path = log_path(session_id);
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "no session '" + session_id + "'");
  std::vector<json> events;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      events.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      // A torn final line from a crash mid-append is dropped; anything else is corruption.
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(Errc::corrupt_data, path.string() + " line " + std::to_string(lineno));
    }
  }
  return events;
}

std::vector<std::string> SessionStore::session_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : fs::directory_iterator(root_ / "sessions")) {
    const auto name = e.path().filename().string();
    if (name.size() > kLogSuffix.size() && name.ends_with(kLogSuffix)) {
      ids.push_back(name.substr(0, name.size() - kLogSuffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void SessionStore::write_index(const json& index) {
  std::lock_guard lock(file_mutex_);
  write_file_atomic(root_ / "sessions" / "index.json", index.dump(2) + "\n");
}

json SessionStore::read_index() const {
  std::lock_guard lock(file_mutex_);
  const auto path = root_ / "sessions" / "index.json";
  if (!fs::exists(path)) return json::object();
  return parse_file(path);
}

std::set<std::string> SessionStore::exposure(const std::string& subject_id) const {
  const auto path = subject_path(subject_id);
  std::lock_guard lock(file_mutex_);
  if (!fs::exists(path)) return {};
  const auto j = parse_file(path);
  return j.at("exposed").get<std::set<std::string>>();
}

void SessionStore::add_exposure(const std::string& subject_id, const std::set<std::string>& keys) {
  const auto path = subject_path(subject_id);
  std::lock_guard lock(file_mutex_);
  std::set<std::string> all;
  if (fs::exists(path)) all = parse_file(path).at("exposed").get<std::set<std::string>>();
  all.insert(keys.begin(), keys.end());
  write_file_atomic(path, json{{"subject_id", subject_id}, {"exposed", all}}.dump(2) + "\n");
}

}  // namespace texshape::trials
