#include <array>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <memory>

#include "commands.hpp"
#include "metrics_common.hpp"
#include "texshape/error.hpp"
#include "texshape/metrics/report_io.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;
using namespace texshape::metrics;

std::vector<Observation> load_all(const std::vector<std::string>& inputs) {
  std::vector<fs::path> paths(inputs.begin(), inputs.end());
  return load_observations(paths);
}

std::vector<Observation> cue_conflict_only(const std::vector<Observation>& rows, std::size_t& skipped) {
  std::vector<Observation> out;
  skipped = 0;
  for (const auto& o : rows) {
    if (o.shape_category && o.texture_category) out.push_back(o);
    else ++skipped;
  }
  return out;
}

std::string show(const std::optional<double>& v) {
  if (!v) return "NA";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), *v);
  return std::string(buf.data(), res.ptr);
}

namespace {

struct BiasOpts {
  std::vector<std::string> in;
  std::string out, group = "all";
};

void run_bias(const BiasOpts& o, Context& ctx) {
  std::size_t skipped = 0;
  const auto rows = cue_conflict_only(load_all(o.in), skipped);
  const auto report = compute_shape_bias(rows, o.group);
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_report(fs::path(o.out) / "bias.csv", [&](std::ostream& s) { write_bias_csv(s, report); });
    write_report(fs::path(o.out) / "bias.svg",
                 [&](std::ostream& s) { write_bias_svg(s, std::span<const BiasReport>(&report, 1)); });
  }
  const auto& a = report.aggregate;
  ctx.out << "shape_bias " << show(a.shape_bias()) << '\n'
          << "fraction_correct_either " << show(a.fraction_correct_either()) << '\n'
          << "analyzed " << a.n_analyzed() << " excluded_no_conflict " << a.n_excluded_no_conflict
          << " no_response " << a.n_no_response << " skipped_non_conflict " << skipped << '\n';
}

struct AccuracyOpts {
  std::vector<std::string> in;
  std::string out, mode = "strict", group_by = "none";
};

void run_accuracy(const AccuracyOpts& o, Context& ctx) {
  const auto mode = parse_accuracy_mode(o.mode);
  if (!mode) throw Error(Errc::invalid_argument, "unknown mode '" + o.mode + "'");
  const auto group_by = parse_group_by(o.group_by);
  if (!group_by) throw Error(Errc::invalid_argument, "unknown group-by '" + o.group_by + "'");
  std::vector<Observation> rows;
  for (auto& r : load_all(o.in)) {
    if (ground_truth(r)) rows.push_back(std::move(r));
  }
  const auto table = compute_accuracy(rows, *mode, *group_by);
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_report(fs::path(o.out) / "accuracy.csv", [&](std::ostream& s) { write_accuracy_csv(s, table); });
  }
  for (const auto& r : table.rows) {
    if (r.category == "all") ctx.out << r.group << ' ' << show(r.accuracy) << ' ' << r.n_trials << '\n';
  }
}

struct CurveOpts {
  std::vector<std::string> in;
  std::string out, kind, mode = "strict", group = "all";
  std::vector<double> levels;
};

void run_curve(const CurveOpts& o, Context& ctx) {
  const auto mode = parse_accuracy_mode(o.mode);
  if (!mode) throw Error(Errc::invalid_argument, "unknown mode '" + o.mode + "'");
  const auto rows = load_all(o.in);
  const auto report = compute_curve(rows, o.kind, o.levels, *mode, o.group);
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_report(fs::path(o.out) / ("curve_" + o.kind + ".csv"), [&](std::ostream& s) { write_curve_csv(s, report); });
    write_report(fs::path(o.out) / ("curve_" + o.kind + ".svg"),
                 [&](std::ostream& s) { write_curve_svg(s, std::span<const CurveReport>(&report, 1)); });
  }
  for (const auto& p : report.points) {
    ctx.out << show(p.level) << ' ' << show(p.accuracy) << ' ' << p.n_trials << '\n';
  }
}

struct MceOpts {
  std::string in, out, baseline;
  int precision = 1;
};

void run_mce(const MceOpts& o, Context& ctx) {
  const auto errors = read_corruption_csv(fs::path(o.in));
  std::optional<CorruptionValues> base;
  if (!o.baseline.empty()) base = read_corruption_csv(fs::path(o.baseline));
  const auto report = base ? compute_mce(errors, std::span<const double>(*base)) : compute_mce(errors);
  if (!o.out.empty()) {
    ensure_dir(o.out);
    write_report(fs::path(o.out) / "mce.csv", [&](std::ostream& s) { write_mce_csv(s, report); });
  }
  ctx.out << std::fixed << std::setprecision(o.precision) << report.mce << '\n';
  ctx.out << std::defaultfloat;
}

}  // namespace

void register_metrics(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("metrics", "Shape bias, accuracy, distortion curves and mCE");
  cmd->require_subcommand(1);
  {
    auto o = std::make_shared<BiasOpts>();
    auto* s = cmd->add_subcommand("bias", "Shape bias of cue-conflict responses");
    s->add_option("--in", o->in, "Record exports, observation CSVs or directories")->required();
    s->add_option("--out", o->out, "Report directory");
    s->add_option("--group", o->group, "Subject group label")->capture_default_str();
    s->callback([o, &ctx] { run_bias(*o, ctx); });
  }
  {
    auto o = std::make_shared<AccuracyOpts>();
    auto* s = cmd->add_subcommand("accuracy", "Accuracy on single-cue stimuli");
    s->add_option("--in", o->in, "Record exports, observation CSVs or directories")->required();
    s->add_option("--out", o->out, "Report directory");
    s->add_option("--mode", o->mode, "strict or answered-only")->capture_default_str();
    s->add_option("--group-by", o->group_by, "none, condition, subject or subject_kind")->capture_default_str();
    s->callback([o, &ctx] { run_accuracy(*o, ctx); });
  }
  {
    auto o = std::make_shared<CurveOpts>();
    auto* s = cmd->add_subcommand("curve", "Accuracy per distortion level");
    s->add_option("--in", o->in, "Record exports, observation CSVs or directories")->required();
    s->add_option("--out", o->out, "Report directory");
    s->add_option("--kind", o->kind, "Distortion kind")->required();
    s->add_option("--levels", o->levels, "Level grid (observed levels when omitted)")->delimiter(',');
    s->add_option("--mode", o->mode, "strict or answered-only")->capture_default_str();
    s->add_option("--group", o->group, "Subject group label")->capture_default_str();
    s->callback([o, &ctx] { run_curve(*o, ctx); });
  }
  {
    auto o = std::make_shared<MceOpts>();
    auto* s = cmd->add_subcommand("mce", "Mean corruption error over 15 corruptions");
    s->add_option("--in", o->in, "CSV corruption,error")->required();
    s->add_option("--baseline", o->baseline, "Baseline CSV; enables normalized mode");
    s->add_option("--out", o->out, "Report directory");
    s->add_option("--precision", o->precision, "Decimals printed")->capture_default_str();
    s->callback([o, &ctx] { run_mce(*o, ctx); });
  }
}

}  // namespace texshape::cli
