#include "texshape/stimuli/manifest.hpp"

#include <array>
#include <fstream>

#include <json.hpp>

#include "texshape/error.hpp"

namespace texshape {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<StimulusCondition, std::string_view>, 8> kConditionNames = {{
    {StimulusCondition::original, "original"},
    {StimulusCondition::greyscale, "greyscale"},
    {StimulusCondition::silhouette, "silhouette"},
    {StimulusCondition::edges, "edges"},
    {StimulusCondition::texture, "texture"},
    {StimulusCondition::cue_conflict_style_transfer, "cue-conflict-style-transfer"},
    {StimulusCondition::cue_conflict_filled_silhouette, "cue-conflict-filled-silhouette"},
    {StimulusCondition::distortion, "distortion"},
}};

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

json optional_category(const std::optional<Category>& c) {
  return c ? json(std::string(to_string(*c))) : json(nullptr);
}

}  // namespace

json to_json(const StimulusRecord& r) {
  json j;
  j["id"] = r.id;
  j["condition"] = std::string(to_string(r.condition));
  j["shape_category"] = optional_category(r.shape_category);
  j["texture_category"] = optional_category(r.texture_category);
  j["source_content"] = optional_string(r.source_content);
  j["source_texture"] = optional_string(r.source_texture);
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["path"] = r.path;
  if (r.distortion) {
    j["distortion_kind"] = std::string(to_string(r.distortion->kind));
    j["distortion_level"] = r.distortion->level;
  }
  return j;
}

namespace {

std::string where(int lineno) {
  return lineno < 0 ? std::string("stimulus record: ")
                    : "manifest line " + std::to_string(lineno) + ": ";
}

std::optional<Category> category_field(const json& j, const char* key, int lineno) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(Errc::parse_error, where(lineno) + key + " must be a string");
  const auto cat = parse_category(it->get<std::string>());
  if (!cat) {
    throw Error(Errc::parse_error,
                where(lineno) + "unknown category '" + it->get<std::string>() + "'");
  }
  return cat;
}

std::optional<std::string> string_field(const json& j, const char* key, int lineno) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(Errc::parse_error, where(lineno) + key + " must be a string");
  return it->get<std::string>();
}

StimulusRecord from_json(const json& j, int lineno) {
  if (!j.is_object()) throw Error(Errc::parse_error, where(lineno) + "expected a JSON object");
  StimulusRecord r;
  const auto id = string_field(j, "id", lineno);
  if (!id) throw Error(Errc::parse_error, where(lineno) + "missing id");
  r.id = *id;
  const auto cond = string_field(j, "condition", lineno);
  if (!cond) throw Error(Errc::parse_error, where(lineno) + "missing condition");
  const auto parsed = parse_condition(*cond);
  if (!parsed) throw Error(Errc::parse_error, where(lineno) + "unknown condition '" + *cond + "'");
  r.condition = *parsed;
  r.shape_category = category_field(j, "shape_category", lineno);
  r.texture_category = category_field(j, "texture_category", lineno);
  r.source_content = string_field(j, "source_content", lineno);
  r.source_texture = string_field(j, "source_texture", lineno);
  if (const auto it = j.find("seed"); it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
      throw Error(Errc::parse_error, where(lineno) + "seed must be a nonnegative integer");
    }
    r.seed = it->get<std::uint64_t>();
  }
  const auto path = string_field(j, "path", lineno);
  if (!path) throw Error(Errc::parse_error, where(lineno) + "missing path");
  r.path = *path;
  if (const auto kind = string_field(j, "distortion_kind", lineno)) {
    const auto k = parse_distortion_kind(*kind);
    if (!k) throw Error(Errc::parse_error, where(lineno) + "unknown distortion kind '" + *kind + "'");
    const auto lv = j.find("distortion_level");
    if (lv == j.end() || !lv->is_number()) {
      throw Error(Errc::parse_error, where(lineno) + "distortion_level missing");
    }
    r.distortion = DistortionTag{*k, lv->get<double>()};
  }
  try {
    validate(r);
  } catch (const Error& e) {
    throw Error(Errc::parse_error, where(lineno) + e.what());
  }
  return r;
}

}  // namespace

StimulusRecord stimulus_from_json(const json& j) { return from_json(j, -1); }

std::string_view to_string(StimulusCondition condition) noexcept {
  for (const auto& [c, name] : kConditionNames) {
    if (c == condition) return name;
  }
  return "unknown";
}

std::optional<StimulusCondition> parse_condition(std::string_view name) noexcept {
  for (const auto& [c, n] : kConditionNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

bool is_cue_conflict(StimulusCondition condition) noexcept {
  return condition == StimulusCondition::cue_conflict_style_transfer ||
         condition == StimulusCondition::cue_conflict_filled_silhouette;
}

void validate(const StimulusRecord& r) {
  if (r.id.empty()) throw Error(Errc::invalid_argument, "stimulus id is empty");
  const std::string what = "stimulus " + r.id + ": ";
  if (is_cue_conflict(r.condition)) {
    if (!r.shape_category || !r.texture_category) {
      throw Error(Errc::invalid_argument, what + "cue-conflict needs shape and texture categories");
    }
  } else if (r.condition == StimulusCondition::texture) {
    if (r.shape_category || !r.texture_category) {
      throw Error(Errc::invalid_argument, what + "texture stimuli carry only a texture category");
    }
  } else if (!r.shape_category || r.texture_category) {
    throw Error(Errc::invalid_argument, what + "single-cue stimuli carry only a shape category");
  }
  if ((r.condition == StimulusCondition::distortion) != r.distortion.has_value()) {
    throw Error(Errc::invalid_argument,
                what + "distortion kind/level present iff condition is distortion");
  }
}

void write_manifest(std::ostream& out, const std::vector<StimulusRecord>& records) {
  out << json{{"kind", "stimulus-manifest"}, {"schema_version", kManifestSchemaVersion}}.dump()
      << '\n';
  for (const auto& r : records) {
    validate(r);
    out << to_json(r).dump() << '\n';
  }
}

void write_manifest(const std::filesystem::path& path, const std::vector<StimulusRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_manifest(out, records);
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

void append_manifest(const std::filesystem::path& path, const std::vector<StimulusRecord>& records) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (fresh) {
    write_manifest(path, records);
    return;
  }
  read_manifest(path);  // header and schema check before appending
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(Errc::io_error, "cannot append to " + path.string());
  for (const auto& r : records) {
    validate(r);
    out << to_json(r).dump() << '\n';
  }
}

std::vector<StimulusRecord> read_manifest(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header = false;
  std::vector<StimulusRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::parse_error, where(lineno) + "malformed JSON: " + e.what());
    }
    if (!header) {
      if (!j.is_object() || !j.contains("schema_version")) {
        throw Error(Errc::parse_error, where(lineno) + "missing manifest header");
      }
      const auto& v = j["schema_version"];
      if (!v.is_number_integer() || v.get<int>() != kManifestSchemaVersion) {
        throw Error(Errc::schema_mismatch, where(lineno) + "unsupported schema_version " + v.dump() +
                                               ", expected " +
                                               std::to_string(kManifestSchemaVersion));
      }
      header = true;
      continue;
    }
    records.push_back(from_json(j, lineno));
  }
  if (!header) throw Error(Errc::parse_error, "manifest is empty (no header line)");
  return records;
}

std::vector<StimulusRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open manifest " + path.string());
  return read_manifest(in);
}

}  // namespace texshape
