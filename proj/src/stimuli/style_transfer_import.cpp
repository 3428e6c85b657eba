#include <algorithm>
#include <cctype>

#include "texshape/error.hpp"
#include "texshape/stimuli/manifest.hpp"

namespace texshape {

Category category_from_stem(std::string_view stem) {
  std::size_t end = stem.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(stem[end - 1]))) --end;
  const auto cat = parse_category(stem.substr(0, end));
  if (!cat) {
    throw Error(Errc::parse_error, "cannot derive a category from '" + std::string(stem) + "'");
  }
  return *cat;
}

std::vector<StimulusRecord> import_style_transfer(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(Errc::not_found, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<StimulusRecord> records;
  records.reserve(files.size());
  for (const auto& file : files) {
    const std::string stem = file.stem().string();
    const auto sep = stem.find('_');
    if (sep == std::string::npos || stem.find('_', sep + 1) != std::string::npos) {
      throw Error(Errc::parse_error, file.filename().string() + ": expected <content>_<texture>.png");
    }
    const std::string content = stem.substr(0, sep);
    const std::string texture = stem.substr(sep + 1);
    StimulusRecord r;
    r.id = stem;
    r.condition = StimulusCondition::cue_conflict_style_transfer;
    r.shape_category = category_from_stem(content);
    r.texture_category = category_from_stem(texture);
    r.source_content = content;
    r.source_texture = texture;
    r.path = file.string();
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace texshape
