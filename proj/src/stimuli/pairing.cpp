#include "texshape/stimuli/pairing.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include <json.hpp>

#include "texshape/error.hpp"

namespace texshape {

using nlohmann::json;

namespace {

using Pools = std::array<std::vector<const CategorizedImage*>, kCategoryCount>;

Pools group(std::span<const CategorizedImage> images, const char* what) {
  Pools pools;
  for (const auto& img : images) pools[index_of(img.category)].push_back(&img);
  for (int c = 0; c < kCategoryCount; ++c) {
    if (pools[c].empty()) {
      throw Error(Errc::missing_data, std::string("no ") + what + " images for category " +
                                          std::string(kCategoryNames[c]));
    }
  }
  return pools;
}

// Without replacement while the pool lasts, then reshuffle and continue.
class PoolSampler {
 public:
  PoolSampler(const std::vector<const CategorizedImage*>& pool, RngStream& rng)
      : order_(pool), rng_(rng) {
    reshuffle();
  }

  const CategorizedImage& next() {
    if (cursor_ == order_.size()) reshuffle();
    return *order_[cursor_++];
  }

 private:
  void reshuffle() {
    rng_.shuffle(std::span<const CategorizedImage*>(order_));
    cursor_ = 0;
  }

  std::vector<const CategorizedImage*> order_;
  RngStream& rng_;
  std::size_t cursor_ = 0;
};

constexpr int kPairingSchemaVersion = 1;

}  // namespace

PairingManifest sample_cue_conflict_pairs(std::span<const CategorizedImage> content,
                                          std::span<const CategorizedImage> textures,
                                          RngStream& rng) {
  const Pools content_pools = group(content, "content");
  const Pools texture_pools = group(textures, "texture");
  PairingManifest manifest;
  manifest.entries.reserve(kPairingSize);
  for (int s = 0; s < kCategoryCount; ++s) {
    for (int t = 0; t < kCategoryCount; ++t) {
      PoolSampler shapes(content_pools[s], rng);
      PoolSampler texs(texture_pools[t], rng);
      for (int rep = 1; rep <= kReplicatesPerPair; ++rep) {
        const auto& c = shapes.next();
        const auto& x = texs.next();
        manifest.entries.push_back({category_at(s), category_at(t), c.id, x.id, rep});
      }
    }
  }
  return manifest;
}

std::size_t count_no_conflict(const PairingManifest& manifest) {
  return static_cast<std::size_t>(std::count_if(
      manifest.entries.begin(), manifest.entries.end(),
      [](const PairingEntry& e) { return e.shape == e.texture; }));
}

std::vector<StimulusRecord> pairing_to_records(const PairingManifest& manifest,
                                               const std::filesystem::path& dir) {
  std::vector<StimulusRecord> out;
  out.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) {
    StimulusRecord r;
    r.id = e.content_image + "_" + e.texture_image;
    r.condition = StimulusCondition::cue_conflict_style_transfer;
    r.shape_category = e.shape;
    r.texture_category = e.texture;
    r.source_content = e.content_image;
    r.source_texture = e.texture_image;
    r.path = (dir / (r.id + ".png")).string();
    out.push_back(std::move(r));
  }
  return out;
}

void write_pairings(const std::filesystem::path& path, const PairingManifest& manifest) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << json{{"kind", "pairing-manifest"}, {"schema_version", kPairingSchemaVersion}}.dump()
      << '\n';
  for (const auto& e : manifest.entries) {
    out << json{{"shape_category", std::string(to_string(e.shape))},
                {"texture_category", std::string(to_string(e.texture))},
                {"content_image", e.content_image},
                {"texture_image", e.texture_image},
                {"replicate", e.replicate}}
               .dump()
        << '\n';
  }
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

PairingManifest read_pairings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  PairingManifest manifest;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "pairings line " + std::to_string(lineno) + ": ";
    try {
      const json j = json::parse(line);
      if (!header) {
        if (j.value("schema_version", -1) != kPairingSchemaVersion) {
          throw Error(Errc::schema_mismatch, where + "unsupported schema_version");
        }
        header = true;
        continue;
      }
      const auto shape = parse_category(j.at("shape_category").get<std::string>());
      const auto texture = parse_category(j.at("texture_category").get<std::string>());
      if (!shape || !texture) throw Error(Errc::parse_error, where + "unknown category");
      manifest.entries.push_back({*shape, *texture, j.at("content_image").get<std::string>(),
                                  j.at("texture_image").get<std::string>(),
                                  j.at("replicate").get<int>()});
    } catch (const json::exception& e) {
      throw Error(Errc::parse_error, where + e.what());
    }
  }
  if (!header) throw Error(Errc::parse_error, "pairing manifest has no header");
  return manifest;
}

std::vector<CategorizedImage> scan_categorized(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(Errc::not_found, "not a directory: " + dir.string());
  }
  std::vector<CategorizedImage> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
    const std::string stem = entry.path().stem().string();
    out.push_back({stem, entry.path().string(), category_from_stem(stem)});
  }
  std::sort(out.begin(), out.end(),
            [](const CategorizedImage& a, const CategorizedImage& b) { return a.id < b.id; });
  return out;
}

}  // namespace texshape
