#include "texshape/trials/service.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "texshape/error.hpp"
#include "texshape/imgcore/png_io.hpp"

namespace texshape::trials {

using nlohmann::json;

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::parse_error:
    case Errc::schema_mismatch:
    case Errc::unsupported_format:
      return 400;
    case Errc::not_found:
      return 404;
    case Errc::invalid_state:
    case Errc::ambiguous:
    case Errc::missing_data:
      return 409;
    case Errc::corrupt_data:
    case Errc::io_error:
      return 500;
  }
  return 500;
}

json to_json(const TrialSpec& spec) {
  json phases = json::array();
  for (const auto& p : spec.phases) phases.push_back({{"name", p.name}, {"duration_ms", p.duration_ms}});
  // Labels stay server-side, except the answer a practice trial's feedback
  // phase highlights. Cue-conflict stimuli never get one.
  json j{{"type", "trial"},
         {"session_id", spec.session_id},
         {"trial_index", spec.trial_index},
         {"phase", std::string(to_string(spec.phase))},
         {"block", spec.block},
         {"stimulus_id", spec.stimulus.id},
         {"stimulus_url", "/stimuli/" + spec.stimulus.id + ".png"},
         {"mask_id", spec.mask_id},
         {"mask_url", "/masks/" + spec.mask_id + ".png"},
         {"phases", phases},
         {"instruction", std::string(to_string(spec.instruction))},
         {"background_grey", spec.background_grey},
         {"presented_at", spec.presented_at}};
  if (spec.phase == TrialPhase::practice && !is_cue_conflict(spec.stimulus.condition)) {
    const auto& st = spec.stimulus;
    const auto truth = st.condition == StimulusCondition::texture ? st.texture_category : st.shape_category;
    if (truth) j["feedback_category"] = std::string(to_string(*truth));
  }
  return j;
}

json to_json(const BreakMarker& m) {
  return json{{"type", "break"},
              {"session_id", m.session_id},
              {"completed_phase", std::string(to_string(m.completed_phase))},
              {"trials_completed", m.trials_completed},
              {"trials_total", m.trials_total},
              {"answered", m.answered},
              {"correct", m.correct}};
}

json to_json(const FinishedMarker& m) {
  return json{{"type", "finished"}, {"session_id", m.session_id}, {"trials_total", m.trials_total}};
}

json to_json(const NextItem& item) {
  return std::visit([](const auto& v) { return to_json(v); }, item);
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, Errc code, const std::string& message) {
  send_json(res, http_status(code), json{{"error", std::string(to_string(code))}, {"message", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) throw Error(Errc::parse_error, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("malformed JSON body: ") + e.what());
  }
}

std::optional<double> optional_number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw Error(Errc::invalid_argument, std::string(key) + " must be a number");
  return it->get<double>();
}

std::string read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::not_found, "stimulus file missing: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, Errc::invalid_argument, e.what());
    } catch (const std::exception& e) {
      send_json(res, 500, json{{"error", "internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

TrialService::TrialService(TrialEngine& engine)
    : engine_(engine), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

TrialService::~TrialService() { stop(); }

void TrialService::install_routes() {
  auto& s = *server_;
  // The browser client may be served from another origin.
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                         {"Access-Control-Allow-Headers", "Content-Type"},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  s.Post("/plans", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto config = plan_config_from_json(parse_body(req));
    const auto& plan = engine_.add_plan(create_plan(config));
    send_json(res, 201, to_json(plan));
  }));

  s.Get(R"(/plans/([A-Za-z0-9._-]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto plan = engine_.plan(req.matches[1]);
    if (!plan) throw Error(Errc::not_found, "no plan '" + std::string(req.matches[1]) + "'");
    send_json(res, 200, to_json(*plan));
  }));

  s.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req);
    if (!body.contains("seed") || !body.at("seed").is_number_unsigned()) {
      throw Error(Errc::invalid_argument, "seed must be a nonnegative integer");
    }
    auto kind = SubjectKind::human;
    if (body.contains("subject_kind")) {
      const auto k = parse_subject_kind(body.at("subject_kind").get<std::string>());
      if (!k) throw Error(Errc::invalid_argument, "unknown subject_kind");
      kind = *k;
    }
    const auto sid = engine_.open_session(body.at("plan_id").get<std::string>(),
                                          body.at("subject_id").get<std::string>(),
                                          body.at("seed").get<std::uint64_t>(), kind);
    const auto snap = engine_.snapshot(sid);
    send_json(res, 201, json{{"session_id", sid},
                             {"plan_id", snap.plan_id},
                             {"subject_id", snap.subject_id},
                             {"state", std::string(to_string(snap.state))},
                             {"practice_trials", snap.practice_count()},
                             {"trials_total", snap.schedule.size()}});
  }));

  s.Get(R"(/sessions/([A-Za-z0-9._-]+)/next)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, to_json(engine_.next_trial(req.matches[1])));
  }));

  s.Post(R"(/sessions/([A-Za-z0-9._-]+)/response)",
         guarded([this](const httplib::Request& req, httplib::Response& res) {
           const auto body = parse_body(req);
           std::optional<Category> response;
           if (body.contains("response") && !body.at("response").is_null()) {
             const auto name = body.at("response").get<std::string>();
             response = parse_category(name);
             if (!response) throw Error(Errc::invalid_argument, "unknown category '" + name + "'");
           }
           if (!body.contains("trial_index") || !body.at("trial_index").is_number_integer()) {
             throw Error(Errc::invalid_argument, "trial_index must be an integer");
           }
           const auto record = engine_.record_response(
               req.matches[1], body.at("trial_index").get<std::int64_t>(), response,
               optional_number(body, "rt_ms"), optional_number(body, "onset_ts"),
               optional_number(body, "click_ts"));
           // Acknowledge without echoing the record: it carries the labels.
           send_json(res, 200, json{{"session_id", record.session_id},
                                    {"trial_index", record.trial_index},
                                    {"response", record.response ? json(std::string(to_string(*record.response)))
                                                                 : json(nullptr)},
                                    {"rt_ms", record.reaction_time_ms ? json(*record.reaction_time_ms) : json(nullptr)},
                                    {"timing_flag", record.timing_flag}});
         }));

  s.Get(R"(/sessions/([A-Za-z0-9._-]+)/export)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    std::ostringstream out;
    write_records(out, engine_.export_records(req.matches[1]));
    res.status = 200;
    res.set_content(out.str(), "application/x-ndjson");
  }));

  s.Get(R"(/stimuli/([A-Za-z0-9._-]+)\.png)", guarded([this](const httplib::Request& req, httplib::Response& res) {
    const auto stim = engine_.find_stimulus(req.matches[1]);
    if (!stim) throw Error(Errc::not_found, "no stimulus '" + std::string(req.matches[1]) + "'");
    res.status = 200;
    res.set_content(read_binary(stim->path), "image/png");
  }));

  s.Get(R"(/masks/(m[0-9a-f]{16})\.png)", guarded([](const httplib::Request& req, httplib::Response& res) {
    const auto bytes = encode_png(render_mask(req.matches[1]));
    res.status = 200;
    res.set_content(std::string(bytes.begin(), bytes.end()), "image/png");
  }));
}

int TrialService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) {
    throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void TrialService::listen_after_bind() { server_->listen_after_bind(); }

void TrialService::stop() {
  if (server_) server_->stop();
}

}  // namespace texshape::trials
