#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "texshape/stimuli/manifest.hpp"

namespace texshape::cli {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

void register_stimuli(CLI::App& app, Context& ctx);
void register_distort(CLI::App& app, Context& ctx);
void register_taxonomy(CLI::App& app, Context& ctx);
void register_trials(CLI::App& app, Context& ctx);
void register_metrics(CLI::App& app, Context& ctx);
void register_pipeline(CLI::App& app, Context& ctx);

// Sorted *.png files of a directory, or the file itself.
std::vector<std::filesystem::path> list_pngs(const std::filesystem::path& path);
void ensure_dir(const std::filesystem::path& dir);

}  // namespace texshape::cli
