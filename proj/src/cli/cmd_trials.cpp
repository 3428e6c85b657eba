#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "texshape/error.hpp"
#include "texshape/trials/service.hpp"
#include "texshape/trials/simulate.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;
using namespace texshape::trials;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

struct ServeOpts {
  std::string host = "127.0.0.1", store;
  int port = 8080;
};

void run_serve(const ServeOpts& o, Context& ctx) {
  SessionStore store(o.store);
  SystemClock clock;
  TrialEngine engine(store, clock);
  TrialService service(engine);
  const int port = service.bind(o.host, o.port);
  if (port <= 0) throw Error(Errc::io_error, "cannot bind " + o.host + ":" + std::to_string(o.port));
  ctx.out << "listening " << o.host << ':' << port << std::endl;
  g_stop = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&service] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
  });
  service.listen_after_bind();
  g_stop = true;
  watcher.join();
}

struct PlanOpts {
  std::string id, store, practice_manifest, instruction = "neutral";
  std::vector<std::string> manifests;
  int stimulus_ms = 200;
  int practice_trials = kPracticeTrials;
  int block_size = kBlockSize;
};

void run_create_plan(const PlanOpts& o, Context& ctx) {
  PlanConfig c;
  c.id = o.id;
  c.manifests = o.manifests;
  if (!o.practice_manifest.empty()) c.practice_manifest = o.practice_manifest;
  const auto ins = parse_instruction(o.instruction);
  if (!ins) throw Error(Errc::invalid_argument, "unknown instruction '" + o.instruction + "'");
  c.instruction = *ins;
  c.durations.stimulus_ms = o.stimulus_ms;
  c.practice_trials = o.practice_trials;
  c.block_size = o.block_size;
  const auto plan = create_plan(c);
  SessionStore store(o.store);
  store.save_plan(plan);
  ctx.out << "plan " << plan.id() << " trials " << plan.stimuli.size() << " blocks " << plan.block_count()
          << " practice " << plan.config.practice_trials << '\n';
}

struct SimulateOpts {
  std::string plan, decisions, out, store, subject = "model";
};

ExperimentPlan resolve_plan(const std::string& plan, const std::string& store_dir) {
  if (fs::is_regular_file(plan)) {
    std::ifstream in(plan);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::parse_error, plan + ": " + e.what());
    }
    return j.contains("config") ? plan_from_json(j) : create_plan(plan_config_from_json(j));
  }
  if (store_dir.empty()) throw Error(Errc::not_found, "no plan file '" + plan + "' and no --store given");
  SessionStore store(store_dir);
  auto p = store.load_plan(plan);
  if (!p) throw Error(Errc::not_found, "no plan '" + plan + "' in " + store_dir);
  return std::move(*p);
}

void run_simulate(const SimulateOpts& o, Context& ctx) {
  const auto plan = resolve_plan(o.plan, o.store);
  const auto records = run_simulated_observer(plan, load_decisions(o.decisions), o.subject);
  if (o.out.empty()) {
    write_records(ctx.out, records);
  } else {
    write_records(fs::path(o.out), records);
    ctx.out << "records " << records.size() << '\n';
  }
}

}  // namespace

void register_trials(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("trials", "Experiment plans, the trial service and simulated observers");
  cmd->require_subcommand(1);
  {
    auto o = std::make_shared<ServeOpts>();
    auto* s = cmd->add_subcommand("serve", "Run the HTTP trial service until interrupted");
    s->add_option("--port", o->port, "TCP port (0 picks a free one)")->capture_default_str();
    s->add_option("--host", o->host, "Bind address")->capture_default_str();
    s->add_option("--store", o->store, "Store directory")->required();
    s->callback([o, &ctx] { run_serve(*o, ctx); });
  }
  {
    auto o = std::make_shared<PlanOpts>();
    auto* s = cmd->add_subcommand("create-plan", "Validate and store an experiment plan");
    s->add_option("--id", o->id, "Plan id")->required();
    s->add_option("--manifest", o->manifests, "Stimulus manifest (repeatable)")->required();
    s->add_option("--practice-manifest", o->practice_manifest, "Disjoint practice manifest");
    s->add_option("--instruction", o->instruction, "neutral, shape or texture")->capture_default_str();
    s->add_option("--stimulus-ms", o->stimulus_ms, "Stimulus presentation time")->capture_default_str();
    s->add_option("--practice-trials", o->practice_trials, "Practice trial count")->capture_default_str();
    s->add_option("--block-size", o->block_size, "Trials per block")->capture_default_str();
    s->add_option("--store", o->store, "Store directory")->required();
    s->callback([o, &ctx] { run_create_plan(*o, ctx); });
  }
  {
    auto o = std::make_shared<SimulateOpts>();
    auto* s = cmd->add_subcommand("simulate", "Trial records of a classifier from its decision table");
    s->add_option("--plan", o->plan, "Plan JSON file, or plan id with --store")->required();
    s->add_option("--decisions", o->decisions, "CSV stimulus_id,category")->required();
    s->add_option("--store", o->store, "Store directory holding the plan");
    s->add_option("--subject", o->subject, "Subject id of the classifier")->capture_default_str();
    s->add_option("--out", o->out, "Output JSONL (stdout when omitted)");
    s->callback([o, &ctx] { run_simulate(*o, ctx); });
  }
}

}  // namespace texshape::cli
