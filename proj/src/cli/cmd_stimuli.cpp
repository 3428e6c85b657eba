#include <memory>

#include "commands.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/png_io.hpp"
#include "texshape/stimuli/generators.hpp"
#include "texshape/stimuli/pairing.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;

namespace {

struct SilhouetteOpts {
  std::string in, out, overrides;
  float threshold = kSilhouetteThreshold;
};

void run_silhouettes(const SilhouetteOpts& o, Context& ctx) {
  ensure_dir(o.out);
  std::vector<StimulusRecord> records;
  for (const auto& file : list_pngs(o.in)) {
    const auto stem = file.stem().string();
    std::optional<fs::path> override_mask;
    if (!o.overrides.empty()) override_mask = fs::path(o.overrides) / file.filename();
    const auto sil = make_silhouette(load_image(file), o.threshold, override_mask);
    save_png(sil, fs::path(o.out) / (stem + ".png"));
    StimulusRecord r;
    r.id = stem;
    r.condition = StimulusCondition::silhouette;
    r.shape_category = category_from_stem(stem);
    r.source_content = stem;
    r.path = stem + ".png";
    records.push_back(std::move(r));
  }
  write_manifest(fs::path(o.out) / "manifest.jsonl", records);
  ctx.out << "silhouettes " << records.size() << '\n';
}

struct DirOpts {
  std::string in, out;
};

void run_edges(const DirOpts& o, Context& ctx) {
  ensure_dir(o.out);
  std::vector<StimulusRecord> records;
  for (const auto& file : list_pngs(o.in)) {
    const auto stem = file.stem().string();
    save_png(make_edges(load_image(file)), fs::path(o.out) / (stem + ".png"));
    StimulusRecord r;
    r.id = stem;
    r.condition = StimulusCondition::edges;
    r.shape_category = category_from_stem(stem);
    r.source_content = stem;
    r.path = stem + ".png";
    records.push_back(std::move(r));
  }
  write_manifest(fs::path(o.out) / "manifest.jsonl", records);
  ctx.out << "edges " << records.size() << '\n';
}

struct BankOpts {
  std::string in, out;
  int angles = kTextureBankAngles;
  bool strict = false;
};

std::string bank_id(const std::string& stem, int angle_index) {
  return stem + "-a" + std::to_string(angle_index);
}

void run_texture_bank(const BankOpts& o, Context& ctx) {
  ensure_dir(o.out);
  const auto files = list_pngs(o.in);
  std::vector<ImageBuffer> images;
  for (const auto& f : files) images.push_back(load_image(f));
  const auto bank = build_texture_bank(std::move(images), o.angles, o.strict);
  std::vector<StimulusRecord> records;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const auto& e = bank.entry(i);
    const auto stem = files[e.source_index].stem().string();
    const auto id = bank_id(stem, e.angle_index);
    save_png(bank.render(i), fs::path(o.out) / (id + ".png"));
    StimulusRecord r;
    r.id = id;
    r.condition = StimulusCondition::texture;
    r.texture_category = category_from_stem(stem);
    r.source_texture = stem;
    r.path = id + ".png";
    records.push_back(std::move(r));
  }
  write_manifest(fs::path(o.out) / "manifest.jsonl", records);
  ctx.out << "texture-bank " << records.size() << '\n';
}

struct FilledOpts {
  std::string silhouettes, textures, out;
  std::uint64_t seed = 0;
  int angles = kTextureBankAngles;
};

void run_filled(const FilledOpts& o, Context& ctx) {
  ensure_dir(o.out);
  const auto sil_files = list_pngs(o.silhouettes);
  const auto tex_files = list_pngs(o.textures);
  std::vector<ImageBuffer> textures;
  for (const auto& f : tex_files) textures.push_back(load_image(f));
  const auto bank = build_texture_bank(std::move(textures), o.angles);
  RngStream rng(o.seed, "filled-conflicts");
  const auto picks = assign_bank_textures(sil_files.size(), bank.size(), rng);
  std::vector<StimulusRecord> records;
  for (std::size_t i = 0; i < sil_files.size(); ++i) {
    const auto sil_stem = sil_files[i].stem().string();
    const auto& e = bank.entry(picks[i]);
    const auto tex_stem = tex_files[e.source_index].stem().string();
    const auto id = sil_stem + "_" + bank_id(tex_stem, e.angle_index);
    save_png(fill_silhouette(load_image(sil_files[i]), bank.render(picks[i])), fs::path(o.out) / (id + ".png"));
    StimulusRecord r;
    r.id = id;
    r.condition = StimulusCondition::cue_conflict_filled_silhouette;
    r.shape_category = category_from_stem(sil_stem);
    r.texture_category = category_from_stem(tex_stem);
    r.source_content = sil_stem;
    r.source_texture = tex_stem;
    r.seed = o.seed;
    r.path = id + ".png";
    records.push_back(std::move(r));
  }
  write_manifest(fs::path(o.out) / "manifest.jsonl", records);
  ctx.out << "filled-conflicts " << records.size() << '\n';
}

struct MaskOpts {
  std::string out;
  std::uint64_t seed = 0;
  int count = 1;
  int size = kStimulusSize;
};

void run_masks(const MaskOpts& o, Context& ctx) {
  if (o.count <= 0 || o.size <= 1) throw Error(Errc::invalid_argument, "count and size must be positive");
  ensure_dir(o.out);
  for (int i = 0; i < o.count; ++i) {
    RngStream rng(o.seed, "mask:" + std::to_string(i));
    save_png(pink_noise_mask(o.size, rng), fs::path(o.out) / ("mask_" + std::to_string(i) + ".png"));
  }
  ctx.out << "masks " << o.count << '\n';
}

struct PairingOpts {
  std::string content, textures, out, records, stimulus_dir;
  std::uint64_t seed = 0;
};

void run_pairings(const PairingOpts& o, Context& ctx) {
  const auto content = scan_categorized(o.content);
  const auto textures = scan_categorized(o.textures);
  RngStream rng(o.seed, "pairings");
  const auto manifest = sample_cue_conflict_pairs(content, textures, rng);
  write_pairings(o.out, manifest);
  if (!o.records.empty()) {
    write_manifest(fs::path(o.records), pairing_to_records(manifest, o.stimulus_dir));
  }
  ctx.out << "pairings " << manifest.entries.size() << " no-conflict " << count_no_conflict(manifest) << '\n';
}

void run_import(const DirOpts& o, Context& ctx) {
  const auto records = import_style_transfer(o.in);
  write_manifest(fs::path(o.out), records);
  ctx.out << "imported " << records.size() << '\n';
}

}  // namespace

void register_stimuli(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("stimuli", "Generate stimulus sets and manifests");
  cmd->require_subcommand(1);

  {
    auto o = std::make_shared<SilhouetteOpts>();
    auto* s = cmd->add_subcommand("silhouettes", "Black-on-white silhouettes of object images");
    s->add_option("--in", o->in, "Image file or directory")->required();
    s->add_option("--out", o->out, "Output directory")->required();
    s->add_option("--threshold", o->threshold, "Foreground threshold on grey values")->capture_default_str();
    s->add_option("--overrides", o->overrides, "Directory of hand-made masks, matched by file name");
    s->callback([o, &ctx] { run_silhouettes(*o, ctx); });
  }
  {
    auto o = std::make_shared<DirOpts>();
    auto* s = cmd->add_subcommand("edges", "Canny edge maps, black edges on white");
    s->add_option("--in", o->in, "Image file or directory")->required();
    s->add_option("--out", o->out, "Output directory")->required();
    s->callback([o, &ctx] { run_edges(*o, ctx); });
  }
  {
    auto o = std::make_shared<BankOpts>();
    auto* s = cmd->add_subcommand("texture-bank", "Rotated texture bank");
    s->add_option("--in", o->in, "Directory of texture images")->required();
    s->add_option("--out", o->out, "Output directory")->required();
    s->add_option("--angles", o->angles, "Rotations per texture")->capture_default_str();
    s->add_flag("--strict", o->strict, "Require exactly 48 textures");
    s->callback([o, &ctx] { run_texture_bank(*o, ctx); });
  }
  {
    auto o = std::make_shared<FilledOpts>();
    auto* s = cmd->add_subcommand("filled-conflicts", "Silhouettes filled with bank textures");
    s->add_option("--silhouettes", o->silhouettes, "Directory of silhouettes")->required();
    s->add_option("--textures", o->textures, "Directory of texture images")->required();
    s->add_option("--out", o->out, "Output directory")->required();
    s->add_option("--seed", o->seed, "Random seed")->required();
    s->add_option("--angles", o->angles, "Rotations per texture")->capture_default_str();
    s->callback([o, &ctx] { run_filled(*o, ctx); });
  }
  {
    auto o = std::make_shared<MaskOpts>();
    auto* s = cmd->add_subcommand("masks", "Pink-noise masks");
    s->add_option("--out", o->out, "Output directory")->required();
    s->add_option("--seed", o->seed, "Random seed")->required();
    s->add_option("--count", o->count, "Number of masks")->capture_default_str();
    s->add_option("--size", o->size, "Side length in pixels")->capture_default_str();
    s->callback([o, &ctx] { run_masks(*o, ctx); });
  }
  {
    auto o = std::make_shared<PairingOpts>();
    auto* s = cmd->add_subcommand("pairings", "Cue-conflict content/texture pairing manifest");
    s->add_option("--content", o->content, "Directory of <category><n>.png content images")->required();
    s->add_option("--textures", o->textures, "Directory of <category><n>.png texture images")->required();
    s->add_option("--out", o->out, "Pairing manifest path")->required();
    s->add_option("--seed", o->seed, "Random seed")->required();
    s->add_option("--records", o->records, "Also write a stimulus manifest of expected outputs");
    s->add_option("--stimulus-dir", o->stimulus_dir, "Directory named in --records paths");
    s->callback([o, &ctx] { run_pairings(*o, ctx); });
  }
  {
    auto o = std::make_shared<DirOpts>();
    auto* s = cmd->add_subcommand("import", "Manifest for externally rendered style-transfer images");
    s->add_option("--in", o->in, "Directory of <content>_<texture>.png files")->required();
    s->add_option("--out", o->out, "Manifest path")->required();
    s->callback([o, &ctx] { run_import(*o, ctx); });
  }
}

}  // namespace texshape::cli
