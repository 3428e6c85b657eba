#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "texshape/distort/spec.hpp"
#include "texshape/taxonomy/category.hpp"

namespace texshape {

enum class StimulusCondition {
  original,
  greyscale,
  silhouette,
  edges,
  texture,
  cue_conflict_style_transfer,
  cue_conflict_filled_silhouette,
  distortion,
};

// "original", "greyscale", "silhouette", "edges", "texture",
// "cue-conflict-style-transfer", "cue-conflict-filled-silhouette", "distortion".
std::string_view to_string(StimulusCondition condition) noexcept;
std::optional<StimulusCondition> parse_condition(std::string_view name) noexcept;
bool is_cue_conflict(StimulusCondition condition) noexcept;

struct DistortionTag {
  DistortionKind kind = DistortionKind::greyscale_identity;
  double level = 0.0;

  friend bool operator==(const DistortionTag&, const DistortionTag&) = default;
};

struct StimulusRecord {
  std::string id;
  StimulusCondition condition = StimulusCondition::original;
  std::optional<Category> shape_category;
  std::optional<Category> texture_category;
  std::optional<std::string> source_content;
  std::optional<std::string> source_texture;
  std::optional<std::uint64_t> seed;
  std::string path;
  // Only for condition == distortion; serialised as distortion_kind/level.
  std::optional<DistortionTag> distortion;

  friend bool operator==(const StimulusRecord&, const StimulusRecord&) = default;
};

// Cue-conflict: both categories. Texture: texture only. Everything else:
// shape only. Distortion records also need a DistortionTag.
void validate(const StimulusRecord& record);

// One manifest line (no header). stimulus_from_json validates the record.
nlohmann::json to_json(const StimulusRecord& record);
StimulusRecord stimulus_from_json(const nlohmann::json& j);

inline constexpr int kManifestSchemaVersion = 1;

// Line-delimited JSON. First line is the header
//   {"kind":"stimulus-manifest","schema_version":1}
// followed by one record object per line.
void write_manifest(std::ostream& out, const std::vector<StimulusRecord>& records);
void write_manifest(const std::filesystem::path& path, const std::vector<StimulusRecord>& records);
std::vector<StimulusRecord> read_manifest(std::istream& in);
std::vector<StimulusRecord> read_manifest(const std::filesystem::path& path);

// Appends records to an existing manifest, writing the header first when the
// file is new or empty.
void append_manifest(const std::filesystem::path& path, const std::vector<StimulusRecord>& records);

// Maps externally produced style-transfer images named <content>_<texture>.png
// into records. Each stem is a category name followed by digits
// (e.g. "cat7_elephant2.png"); files are returned in name order.
std::vector<StimulusRecord> import_style_transfer(const std::filesystem::path& dir);

// "elephant2" -> elephant. Throws parse_error otherwise.
Category category_from_stem(std::string_view stem);

}  // namespace texshape
