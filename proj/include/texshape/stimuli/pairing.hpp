#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "texshape/imgcore/rng.hpp"
#include "texshape/stimuli/manifest.hpp"
#include "texshape/taxonomy/category.hpp"

namespace texshape {

struct CategorizedImage {
  std::string id;    // file stem, e.g. "cat7"
  std::string path;
  Category category;
};

struct PairingEntry {
  Category shape;
  Category texture;
  std::string content_image;  // CategorizedImage::id
  std::string texture_image;
  int replicate;  // 1..5

  friend bool operator==(const PairingEntry&, const PairingEntry&) = default;
};

struct PairingManifest {
  std::vector<PairingEntry> entries;

  friend bool operator==(const PairingManifest&, const PairingManifest&) = default;
};

inline constexpr int kReplicatesPerPair = 5;
inline constexpr int kPairingSize = kCategoryCount * kCategoryCount * kReplicatesPerPair;

// For every ordered (shape, texture) category pair, in row-major category
// order, draws kReplicatesPerPair content images from the shape category and
// texture images from the texture category. Within a pair each pool is
// consumed without replacement; an exhausted pool is reshuffled and drawing
// continues. Throws missing_data when a category has an empty pool.
PairingManifest sample_cue_conflict_pairs(std::span<const CategorizedImage> content,
                                          std::span<const CategorizedImage> textures,
                                          RngStream& rng);

// Pairs whose shape and texture categories coincide.
std::size_t count_no_conflict(const PairingManifest& manifest);

// Style-transfer stimulus records named <content>_<texture>, paths under dir.
std::vector<StimulusRecord> pairing_to_records(const PairingManifest& manifest,
                                               const std::filesystem::path& dir);

// Header {"kind":"pairing-manifest","schema_version":1} then one entry per line.
void write_pairings(const std::filesystem::path& path, const PairingManifest& manifest);
PairingManifest read_pairings(const std::filesystem::path& path);

// Scans a directory of <category><n>.png images (sorted by name).
std::vector<CategorizedImage> scan_categorized(const std::filesystem::path& dir);

}  // namespace texshape
