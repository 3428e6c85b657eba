#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "texshape/error.hpp"
#include "texshape/trials/engine.hpp"

namespace httplib {
class Server;
}

namespace texshape::trials {

// HTTP status for a library error code: 400 for bad input, 404 for unknown
// resources, 409 for state conflicts, 500 otherwise.
int http_status(Errc code) noexcept;

// Wire forms of engine results. Trials carry "type":"trial", breaks
// "type":"break", finished sessions "type":"finished". Practice trials of
// single-cue stimuli add "feedback_category"; no other labels are sent.
nlohmann::json to_json(const TrialSpec& spec);
nlohmann::json to_json(const BreakMarker& marker);
nlohmann::json to_json(const FinishedMarker& marker);
nlohmann::json to_json(const NextItem& item);

// JSON over HTTP:
//   POST /plans                      PlanConfig -> 201 plan
//   GET  /plans/{id}                 plan
//   POST /sessions                   {plan_id, subject_id, seed[, subject_kind]} -> 201
//   GET  /sessions/{id}/next         trial, break or finished
//   POST /sessions/{id}/response     {trial_index, response, rt_ms, onset_ts, click_ts}
//                                    -> {session_id, trial_index, response, rt_ms, timing_flag}
//   GET  /sessions/{id}/export       line-delimited TrialRecords
//   GET  /stimuli/{id}.png, /masks/{id}.png
// Errors are {"error": <code>, "message": <text>}.
class TrialService {
 public:
  explicit TrialService(TrialEngine& engine);
  ~TrialService();

  TrialService(const TrialService&) = delete;
  TrialService& operator=(const TrialService&) = delete;

  // Binds to an ephemeral port when port is 0; returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen_after_bind();
  void stop();

 private:
  void install_routes();

  TrialEngine& engine_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace texshape::trials
