#include "texshape/distort/spec.hpp"

#include <cmath>
#include <string>

#include "texshape/error.hpp"
#include "texshape/imgcore/color.hpp"

namespace texshape {

std::string_view to_string(DistortionKind kind) noexcept {
  switch (kind) {
    case DistortionKind::uniform_noise: return "uniform-noise";
    case DistortionKind::contrast: return "contrast";
    case DistortionKind::low_pass: return "low-pass";
    case DistortionKind::high_pass: return "high-pass";
    case DistortionKind::phase_noise: return "phase-noise";
    case DistortionKind::eidolon_i: return "eidolon-I";
    case DistortionKind::eidolon_ii: return "eidolon-II";
    case DistortionKind::eidolon_iii: return "eidolon-III";
    case DistortionKind::greyscale_identity: return "greyscale-identity";
  }
  return "unknown";
}

std::optional<DistortionKind> parse_distortion_kind(std::string_view name) noexcept {
  for (auto kind : kAllDistortionKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_stochastic(DistortionKind kind) noexcept {
  switch (kind) {
    case DistortionKind::uniform_noise:
    case DistortionKind::phase_noise:
    case DistortionKind::eidolon_i:
    case DistortionKind::eidolon_ii:
    case DistortionKind::eidolon_iii:
      return true;
    default:
      return false;
  }
}

LevelRange level_range(DistortionKind kind) noexcept {
  switch (kind) {
    case DistortionKind::uniform_noise: return {0.0, 1.0};
    case DistortionKind::contrast: return {0.0, 1.0};
    case DistortionKind::low_pass: return {0.0, 64.0};
    case DistortionKind::high_pass: return {0.0, 64.0, true};
    case DistortionKind::phase_noise: return {0.0, 180.0};
    case DistortionKind::eidolon_i:
    case DistortionKind::eidolon_ii:
    case DistortionKind::eidolon_iii: return {0.0, 128.0};
    case DistortionKind::greyscale_identity: return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

double eidolon_coherence(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::eidolon_i: return 1.0;
    case DistortionKind::eidolon_ii: return 0.3;
    case DistortionKind::eidolon_iii: return 0.0;
    default:
      throw Error(Errc::invalid_argument, "not an eidolon kind: " + std::string(to_string(kind)));
  }
}

namespace {

// n values geometrically spaced from `from` to `to`, rounded to 3 decimals.
std::vector<double> log_spaced(double from, double to, int n) {
  std::vector<double> out;
  const double step = std::log(to / from) / (n - 1);
  for (int i = 0; i < n; ++i) {
    out.push_back(std::round(from * std::exp(step * i) * 1000.0) / 1000.0);
  }
  return out;
}

}  // namespace

std::vector<double> default_levels(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::uniform_noise: return {0, .03, .05, .1, .2, .35, .6, .9};
    case DistortionKind::contrast: return {1, .5, .3, .15, .1, .05, .03, .01};
    case DistortionKind::low_pass: {
      auto levels = log_spaced(0.5, 40.0, 8);
      levels.insert(levels.begin(), 0.0);
      return levels;
    }
    case DistortionKind::high_pass: return log_spaced(3.0, 0.4, 8);
    case DistortionKind::phase_noise: return {0, 30, 60, 90, 120, 150, 180};
    case DistortionKind::eidolon_i:
    case DistortionKind::eidolon_ii:
    case DistortionKind::eidolon_iii: return {0, 1, 2, 4, 8, 16, 32, 64};
    case DistortionKind::greyscale_identity: return {0};
  }
  return {};
}

void validate(const DistortionSpec& spec) {
  const auto range = level_range(spec.kind);
  const bool above = range.lo_open ? spec.level > range.lo : spec.level >= range.lo;
  if (!std::isfinite(spec.level) || !above || spec.level > range.hi) {
    throw Error(Errc::invalid_argument,
                std::string(to_string(spec.kind)) + " level " + std::to_string(spec.level) +
                    " outside " + (range.lo_open ? "(" : "[") + std::to_string(range.lo) + ", " +
                    std::to_string(range.hi) + "]");
  }
  if (is_stochastic(spec.kind) && !spec.seed) {
    throw Error(Errc::invalid_argument,
                std::string(to_string(spec.kind)) + " is stochastic and requires a seed");
  }
}

ImageBuffer apply_distortion(const ImageBuffer& img, const DistortionSpec& spec,
                             std::string_view stream_id) {
  validate(spec);
  const ImageBuffer grey = to_greyscale(img);
  switch (spec.kind) {
    case DistortionKind::greyscale_identity: return grey;
    case DistortionKind::contrast: return apply_contrast(grey, spec.level);
    case DistortionKind::low_pass: return apply_lowpass(grey, spec.level);
    case DistortionKind::high_pass: return apply_highpass(grey, spec.level);
    default: break;
  }
  RngStream rng(*spec.seed, stream_id);
  switch (spec.kind) {
    case DistortionKind::uniform_noise: return apply_uniform_noise(grey, spec.level, rng);
    case DistortionKind::phase_noise: return apply_phase_noise(grey, spec.level, rng);
    default: {
      EidolonParams params{spec.level, eidolon_coherence(spec.kind), kEidolonGrain};
      return apply_eidolon(grey, params, rng);
    }
  }
}

}  // namespace texshape
