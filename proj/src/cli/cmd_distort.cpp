#include <memory>
#include <sstream>

#include "commands.hpp"
#include "texshape/distort/spec.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/png_io.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;

namespace {

struct DistortOpts {
  std::string in, out, kind;
  std::vector<double> levels;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void run_distort(const DistortOpts& o, Context& ctx) {
  const auto kind = parse_distortion_kind(o.kind);
  if (!kind) throw Error(Errc::invalid_argument, "unknown distortion kind '" + o.kind + "'");
  if (is_stochastic(*kind) && o.seed_opt->count() == 0) {
    throw Error(Errc::invalid_argument, "--seed is required for " + o.kind);
  }
  const auto levels = o.levels.empty() ? default_levels(*kind) : o.levels;
  ensure_dir(o.out);
  std::vector<StimulusRecord> records;
  for (const auto& file : list_pngs(o.in)) {
    const auto stem = file.stem().string();
    const auto img = load_image(file);
    for (std::size_t li = 0; li < levels.size(); ++li) {
      DistortionSpec spec{*kind, levels[li], std::nullopt};
      if (is_stochastic(*kind)) spec.seed = o.seed;
      const auto id = stem + "_" + std::string(to_string(*kind)) + "-" + std::to_string(li);
      save_png(apply_distortion(img, spec, id), fs::path(o.out) / (id + ".png"));
      StimulusRecord r;
      r.id = id;
      r.condition = StimulusCondition::distortion;
      r.shape_category = category_from_stem(stem);
      r.source_content = stem;
      r.seed = spec.seed;
      r.path = id + ".png";
      r.distortion = DistortionTag{*kind, levels[li]};
      records.push_back(std::move(r));
    }
  }
  write_manifest(fs::path(o.out) / "manifest.jsonl", records);
  ctx.out << "distorted " << records.size() << '\n';
}

}  // namespace

void register_distort(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<DistortOpts>();
  auto* s = app.add_subcommand("distort", "Apply a parametric distortion over a level grid");
  s->add_option("--in", o->in, "Image file or directory")->required();
  s->add_option("--out", o->out, "Output directory")->required();
  std::ostringstream kinds;
  for (auto k : kAllDistortionKinds) kinds << ' ' << to_string(k);
  s->add_option("--kind", o->kind, "Distortion kind:" + kinds.str())->required();
  s->add_option("--levels", o->levels, "Severity levels (default grid when omitted)")->delimiter(',');
  o->seed_opt = s->add_option("--seed", o->seed, "Random seed (required for stochastic kinds)");
  s->callback([o, &ctx] { run_distort(*o, ctx); });
}

}  // namespace texshape::cli
