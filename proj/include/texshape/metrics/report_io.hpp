#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>

#include "texshape/metrics/accuracy.hpp"
#include "texshape/metrics/bias.hpp"
#include "texshape/metrics/curve.hpp"
#include "texshape/metrics/mce.hpp"

namespace texshape::metrics {

// CSV schemas. Doubles use the shortest form that round-trips; "NA" marks
// undefined values.
//
// bias:     subject_group,category,n_trials_total,n_excluded_no_conflict,
//           n_shape_match,n_texture_match,n_neither,n_no_response,
//           shape_bias,texture_bias,fraction_correct_either
//           (one "all" row, then the 16 categories in index order)
// accuracy: mode,group_by,group,category,n_trials,n_answered,n_correct,accuracy
// curve:    kind,subject_group,mode,level,n_trials,n_answered,n_correct,
//           accuracy,band_min,band_max
// mce:      corruption,error,baseline,ce,mode (15 rows, then corruption "mCE")
inline constexpr const char* kBiasColumns =
    "subject_group,category,n_trials_total,n_excluded_no_conflict,n_shape_match,n_texture_match,"
    "n_neither,n_no_response,shape_bias,texture_bias,fraction_correct_either";
inline constexpr const char* kAccuracyColumns =
    "mode,group_by,group,category,n_trials,n_answered,n_correct,accuracy";
inline constexpr const char* kCurveColumns =
    "kind,subject_group,mode,level,n_trials,n_answered,n_correct,accuracy,band_min,band_max";
inline constexpr const char* kMceColumns = "corruption,error,baseline,ce,mode";

void write_bias_csv(std::ostream& out, const BiasReport& report);
BiasReport read_bias_csv(std::istream& in);
void write_accuracy_csv(std::ostream& out, const AccuracyTable& table);
AccuracyTable read_accuracy_csv(std::istream& in);
void write_curve_csv(std::ostream& out, const CurveReport& report);
CurveReport read_curve_csv(std::istream& in);
void write_mce_csv(std::ostream& out, const CorruptionReport& report);

// Shape-decision fraction per category (one marker colour per report) with
// the aggregate as a vertical line.
void write_bias_svg(std::ostream& out, std::span<const BiasReport> reports);
// Accuracy against level (grid positions) with min/max bands.
void write_curve_svg(std::ostream& out, std::span<const CurveReport> reports);

// Writes text produced by fn to path; io_error when the path is unwritable.
template <class Fn>
void write_report(const std::filesystem::path& path, Fn&& fn);

void write_text_file(const std::filesystem::path& path, const std::string& text);

template <class Fn>
void write_report(const std::filesystem::path& path, Fn&& fn) {
  std::ostringstream ss;
  fn(ss);
  write_text_file(path, ss.str());
}

}  // namespace texshape::metrics
