#include <fstream>
#include <memory>

#include "commands.hpp"
#include "metrics_common.hpp"
#include "texshape/error.hpp"
#include "texshape/metrics/report_io.hpp"
#include "texshape/trials/simulate.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;
using namespace texshape::metrics;

namespace {

struct ReproduceOpts {
  std::vector<std::string> records;
  std::string plan, decisions, subject = "model", out;
};

void run_reproduce_bias(const ReproduceOpts& o, Context& ctx) {
  if (o.records.empty() && o.plan.empty()) {
    throw Error(Errc::invalid_argument, "give --records and/or --plan with --decisions");
  }
  ensure_dir(o.out);
  std::vector<Observation> rows;
  if (!o.records.empty()) rows = load_all(o.records);
  if (!o.plan.empty()) {
    if (o.decisions.empty()) throw Error(Errc::invalid_argument, "--plan needs --decisions");
    std::ifstream in(o.plan);
    if (!in) throw Error(Errc::not_found, "cannot open " + o.plan);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::parse_error, o.plan + ": " + e.what());
    }
    const auto plan = j.contains("config") ? trials::plan_from_json(j)
                                           : trials::create_plan(trials::plan_config_from_json(j));
    const auto records = trials::run_simulated_observer(plan, trials::load_decisions(o.decisions), o.subject);
    trials::write_records(fs::path(o.out) / "simulated_records.jsonl", records);
    const auto sim = from_records(records);
    rows.insert(rows.end(), sim.begin(), sim.end());
  }
  std::size_t skipped = 0;
  const auto conflict = cue_conflict_only(rows, skipped);

  std::vector<BiasReport> reports{compute_shape_bias(conflict, "all")};
  for (auto kind : {SubjectKind::human, SubjectKind::machine}) {
    std::vector<Observation> part;
    for (const auto& r : conflict) {
      if (r.subject_kind == kind) part.push_back(r);
    }
    if (part.empty()) continue;
    reports.push_back(compute_shape_bias(part, std::string(trials::to_string(kind))));
  }
  for (const auto& r : reports) {
    const auto name = r.subject_group == "all" ? std::string("bias.csv") : "bias_" + r.subject_group + ".csv";
    write_report(fs::path(o.out) / name, [&](std::ostream& s) { write_bias_csv(s, r); });
    ctx.out << r.subject_group << " shape_bias " << show(r.aggregate.shape_bias()) << " analyzed "
            << r.aggregate.n_analyzed() << '\n';
  }
  write_report(fs::path(o.out) / "bias.svg", [&](std::ostream& s) {
    write_bias_svg(s, std::span<const BiasReport>(reports.data() + (reports.size() > 1 ? 1 : 0),
                                                  reports.size() > 1 ? reports.size() - 1 : 1));
  });
}

}  // namespace

void register_pipeline(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("pipeline", "End-to-end chains");
  cmd->require_subcommand(1);
  auto o = std::make_shared<ReproduceOpts>();
  auto* s = cmd->add_subcommand("reproduce-bias", "Ingest and/or simulate records, then report shape bias");
  s->add_option("--records", o->records, "Record exports, observation CSVs or directories");
  s->add_option("--plan", o->plan, "Plan JSON to simulate a classifier on");
  s->add_option("--decisions", o->decisions, "Classifier decision CSV for --plan");
  s->add_option("--subject", o->subject, "Subject id of the classifier")->capture_default_str();
  s->add_option("--out", o->out, "Report directory")->required();
  s->callback([o, &ctx] { run_reproduce_bias(*o, ctx); });
}

}  // namespace texshape::cli
