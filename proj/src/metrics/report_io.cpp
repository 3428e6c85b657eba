#include "texshape/metrics/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "csv_util.hpp"
#include "texshape/error.hpp"

namespace texshape::metrics {

using detail::format_double;
using detail::format_optional;

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

namespace {

std::vector<std::string> expect_header(std::istream& in, const char* columns) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::parse_error, "report CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != columns) throw Error(Errc::parse_error, "unexpected report header '" + line + "'");
  return detail::split_row(columns);
}

// Reads the data rows, checking the field count.
std::vector<std::vector<std::string>> read_rows(std::istream& in, std::size_t width) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_row(line);
    if (f.size() != width) {
      throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(width) + " fields");
    }
    rows.push_back(std::move(f));
  }
  return rows;
}

void bias_row(std::ostream& out, const std::string& group, std::string_view category, const BiasCounts& c) {
  out << group << ',' << category << ',' << c.n_trials_total << ',' << c.n_excluded_no_conflict << ','
      << c.n_shape_match << ',' << c.n_texture_match << ',' << c.n_neither << ',' << c.n_no_response << ','
      << format_optional(c.shape_bias()) << ',' << format_optional(c.texture_bias()) << ','
      << format_optional(c.fraction_correct_either()) << '\n';
}

}  // namespace

void write_bias_csv(std::ostream& out, const BiasReport& report) {
  out << kBiasColumns << '\n';
  bias_row(out, report.subject_group, "all", report.aggregate);
  for (int i = 0; i < kCategoryCount; ++i) {
    bias_row(out, report.subject_group, kCategoryNames[static_cast<std::size_t>(i)],
             report.per_category[static_cast<std::size_t>(i)]);
  }
}

BiasReport read_bias_csv(std::istream& in) {
  const auto cols = expect_header(in, kBiasColumns);
  const auto rows = read_rows(in, cols.size());
  if (rows.size() != 1 + kCategoryCount) {
    throw Error(Errc::parse_error, "bias CSV needs 17 rows, got " + std::to_string(rows.size()));
  }
  BiasReport report;
  report.subject_group = rows[0][0];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r];
    const std::string where = "bias row " + std::to_string(r + 1);
    const std::string_view expected = r == 0 ? std::string_view("all") : kCategoryNames[r - 1];
    if (f[1] != expected) throw Error(Errc::parse_error, where + ": expected category " + std::string(expected));
    BiasCounts c;
    c.n_trials_total = detail::parse_int(f[2], where);
    c.n_excluded_no_conflict = detail::parse_int(f[3], where);
    c.n_shape_match = detail::parse_int(f[4], where);
    c.n_texture_match = detail::parse_int(f[5], where);
    c.n_neither = detail::parse_int(f[6], where);
    c.n_no_response = detail::parse_int(f[7], where);
    // Ratio columns are derived; check them instead of storing.
    if (format_optional(c.shape_bias()) != f[8] || format_optional(c.fraction_correct_either()) != f[10]) {
      throw Error(Errc::corrupt_data, where + ": ratios disagree with counts");
    }
    if (r == 0) report.aggregate = c;
    else report.per_category[r - 1] = c;
  }
  return report;
}

void write_accuracy_csv(std::ostream& out, const AccuracyTable& table) {
  out << kAccuracyColumns << '\n';
  for (const auto& r : table.rows) {
    out << to_string(table.mode) << ',' << to_string(table.group_by) << ',' << r.group << ','
        << r.category << ',' << r.n_trials << ',' << r.n_answered << ',' << r.n_correct << ','
        << format_optional(r.accuracy) << '\n';
  }
}

AccuracyTable read_accuracy_csv(std::istream& in) {
  const auto cols = expect_header(in, kAccuracyColumns);
  AccuracyTable table;
  bool first = true;
  for (const auto& f : read_rows(in, cols.size())) {
    const auto mode = parse_accuracy_mode(f[0]);
    const auto group_by = parse_group_by(f[1]);
    if (!mode || !group_by) throw Error(Errc::parse_error, "accuracy CSV: bad mode or group_by");
    if (first) {
      table.mode = *mode;
      table.group_by = *group_by;
      first = false;
    }
    table.rows.push_back({f[2], f[3], detail::parse_int(f[4], "accuracy"), detail::parse_int(f[5], "accuracy"),
                          detail::parse_int(f[6], "accuracy"), detail::parse_optional_double(f[7], "accuracy")});
  }
  return table;
}

void write_curve_csv(std::ostream& out, const CurveReport& report) {
  out << kCurveColumns << '\n';
  for (const auto& p : report.points) {
    out << report.kind << ',' << report.subject_group << ',' << to_string(report.mode) << ','
        << format_double(p.level) << ',' << p.n_trials << ',' << p.n_answered << ',' << p.n_correct << ','
        << format_optional(p.accuracy) << ',' << format_optional(p.band_min) << ','
        << format_optional(p.band_max) << '\n';
  }
}

CurveReport read_curve_csv(std::istream& in) {
  const auto cols = expect_header(in, kCurveColumns);
  CurveReport report;
  bool first = true;
  for (const auto& f : read_rows(in, cols.size())) {
    const auto mode = parse_accuracy_mode(f[2]);
    if (!mode) throw Error(Errc::parse_error, "curve CSV: bad mode '" + f[2] + "'");
    if (first) {
      report.kind = f[0];
      report.subject_group = f[1];
      report.mode = *mode;
      first = false;
    }
    CurvePoint p;
    p.level = detail::parse_double(f[3], "curve");
    p.n_trials = detail::parse_int(f[4], "curve");
    p.n_answered = detail::parse_int(f[5], "curve");
    p.n_correct = detail::parse_int(f[6], "curve");
    p.accuracy = detail::parse_optional_double(f[7], "curve");
    p.band_min = detail::parse_optional_double(f[8], "curve");
    p.band_max = detail::parse_optional_double(f[9], "curve");
    if (p.n_trials == 0) report.missing_levels.push_back(p.level);
    report.points.push_back(p);
  }
  return report;
}

void write_mce_csv(std::ostream& out, const CorruptionReport& r) {
  const char* mode = r.normalized ? "normalized" : "plain";
  out << kMceColumns << '\n';
  for (int i = 0; i < kCorruptionCount; ++i) {
    out << kCorruptionNames[static_cast<std::size_t>(i)] << ',' << format_double(r.errors[i]) << ','
        << (r.baseline ? format_double((*r.baseline)[i]) : std::string("NA")) << ','
        << format_double(r.ce[i]) << ',' << mode << '\n';
  }
  out << "mCE,NA,NA," << format_double(r.mce) << ',' << mode << '\n';
}

namespace {

constexpr std::array<const char*, 6> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << v;
  return ss.str();
}

}  // namespace

void write_bias_svg(std::ostream& out, std::span<const BiasReport> reports) {
  const double left = 90, right = 470, top = 30, row = 22;
  const double width = 520, height = top + row * kCategoryCount + 50;
  const auto x_of = [&](double shape_fraction) { return left + (right - left) * shape_fraction; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"18\" font-size=\"11\">texture</text>\n";
  out << "<text x=\"" << right - 30 << "\" y=\"18\" font-size=\"11\">shape</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + row * kCategoryCount
      << "\" stroke=\"#999\"/>\n";
  out << "<line x1=\"" << right << "\" y1=\"" << top << "\" x2=\"" << right << "\" y2=\"" << top + row * kCategoryCount
      << "\" stroke=\"#999\"/>\n";
  for (int c = 0; c < kCategoryCount; ++c) {
    const double y = top + row * (c + 0.5);
    out << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
        << kCategoryNames[static_cast<std::size_t>(c)] << "</text>\n";
  }
  for (std::size_t g = 0; g < reports.size(); ++g) {
    const auto* colour = kPalette[g % kPalette.size()];
    const auto& rep = reports[g];
    if (const auto b = rep.aggregate.shape_bias()) {
      out << "<line x1=\"" << fixed(x_of(*b)) << "\" y1=\"" << top << "\" x2=\"" << fixed(x_of(*b)) << "\" y2=\""
          << top + row * kCategoryCount << "\" stroke=\"" << colour << "\" stroke-dasharray=\"4 2\"/>\n";
    }
    for (int c = 0; c < kCategoryCount; ++c) {
      const auto b = rep.per_category[static_cast<std::size_t>(c)].shape_bias();
      if (!b) continue;
      out << "<circle cx=\"" << fixed(x_of(*b)) << "\" cy=\"" << fixed(top + row * (c + 0.5)) << "\" r=\"5\" fill=\""
          << colour << "\"><title>" << rep.subject_group << "</title></circle>\n";
    }
    out << "<text x=\"" << left + 120.0 * static_cast<double>(g) << "\" y=\"" << height - 12
        << "\" font-size=\"11\" fill=\"" << colour << "\">" << rep.subject_group << "</text>\n";
  }
  out << "</svg>\n";
}

void write_curve_svg(std::ostream& out, std::span<const CurveReport> reports) {
  const double left = 50, right = 430, top = 20, bottom = 260;
  std::size_t n = 1;
  for (const auto& r : reports) n = std::max(n, r.points.size());
  const auto x_of = [&](std::size_t i) {
    return n == 1 ? (left + right) / 2 : left + (right - left) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const auto y_of = [&](double acc) { return bottom - (bottom - top) * acc; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"310\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom << "\" stroke=\"#999\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom << "\" stroke=\"#999\"/>\n";
  if (!reports.empty()) {
    for (std::size_t i = 0; i < reports.front().points.size(); ++i) {
      out << "<text x=\"" << fixed(x_of(i)) << "\" y=\"" << bottom + 16 << "\" font-size=\"10\" text-anchor=\"middle\">"
          << format_double(reports.front().points[i].level) << "</text>\n";
    }
  }
  for (std::size_t g = 0; g < reports.size(); ++g) {
    const auto* colour = kPalette[g % kPalette.size()];
    const auto& pts = reports[g].points;
    std::string upper, lower, line;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].band_min && pts[i].band_max) {
        upper += fixed(x_of(i)) + "," + fixed(y_of(*pts[i].band_max)) + " ";
        lower.insert(0, fixed(x_of(i)) + "," + fixed(y_of(*pts[i].band_min)) + " ");
      }
      if (pts[i].accuracy) line += fixed(x_of(i)) + "," + fixed(y_of(*pts[i].accuracy)) + " ";
    }
    if (!upper.empty()) {
      out << "<polygon points=\"" << upper << lower << "\" fill=\"" << colour << "\" fill-opacity=\"0.2\"/>\n";
    }
    out << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + 120.0 * static_cast<double>(g) << "\" y=\"" << 300
        << "\" font-size=\"11\" fill=\"" << colour << "\">" << reports[g].kind << " " << reports[g].subject_group
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace texshape::metrics
