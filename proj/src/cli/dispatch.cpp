#include "texshape/cli/cli.hpp"

#include <algorithm>

#include "commands.hpp"
#include "texshape/error.hpp"

namespace texshape::cli {

namespace fs = std::filesystem;

std::vector<fs::path> list_pngs(const fs::path& path) {
  if (!fs::exists(path)) throw Error(Errc::not_found, "no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(Errc::missing_data, "no .png files in " + path.string());
  return files;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
}

namespace {

std::string quoted(std::string text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return "\"" + out + "\"";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Texture/shape cue-conflict toolkit", "texshape"};
  app.require_subcommand(1);
  register_stimuli(app, ctx);
  register_distort(app, ctx);
  register_taxonomy(app, ctx);
  register_trials(app, ctx);
  register_metrics(app, ctx);
  register_pipeline(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    err << "error: code=usage message=" << quoted(e.what()) << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: code=" << to_string(e.code()) << " message=" << quoted(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: code=internal message=" << quoted(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace texshape::cli
