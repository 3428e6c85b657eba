#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "texshape/distort/distortions.hpp"
#include "texshape/imgcore/image.hpp"

namespace texshape {

enum class DistortionKind {
  uniform_noise,
  contrast,
  low_pass,
  high_pass,
  phase_noise,
  eidolon_i,
  eidolon_ii,
  eidolon_iii,
  greyscale_identity,
};

inline constexpr std::array<DistortionKind, 9> kAllDistortionKinds = {
    DistortionKind::uniform_noise, DistortionKind::contrast,    DistortionKind::low_pass,
    DistortionKind::high_pass,     DistortionKind::phase_noise, DistortionKind::eidolon_i,
    DistortionKind::eidolon_ii,    DistortionKind::eidolon_iii, DistortionKind::greyscale_identity,
};

// "uniform-noise", "contrast", "low-pass", "high-pass", "phase-noise",
// "eidolon-I", "eidolon-II", "eidolon-III", "greyscale-identity".
std::string_view to_string(DistortionKind kind) noexcept;
std::optional<DistortionKind> parse_distortion_kind(std::string_view name) noexcept;

bool is_stochastic(DistortionKind kind) noexcept;

struct LevelRange {
  double lo;
  double hi;
  bool lo_open = false;  // high-pass excludes sigma == 0
};

// Closed level range per kind:
//   uniform-noise  width    [0, 1]
//   contrast       factor   [0, 1]
//   low-pass       sigma px [0, 64]
//   high-pass      sigma px (0, 64]
//   phase-noise    degrees  [0, 180]
//   eidolon-*      reach px [0, 128]
//   greyscale-identity      [0, 0]
LevelRange level_range(DistortionKind kind) noexcept;

// Coherence preset for eidolon-I/II/III: 1.0, 0.3, 0.0.
double eidolon_coherence(DistortionKind kind);
inline constexpr double kEidolonGrain = 10.0;

// Default severity grid, ordered from mildest to most severe.
std::vector<double> default_levels(DistortionKind kind);

struct DistortionSpec {
  DistortionKind kind = DistortionKind::greyscale_identity;
  double level = 0.0;
  std::optional<std::uint64_t> seed;  // required for stochastic kinds
};

// Validates the spec (range, seed presence) and throws Error otherwise.
void validate(const DistortionSpec& spec);

// Applies the distortion. Colour input is converted to greyscale first.
// Stochastic kinds draw from RngStream(*spec.seed, stream_id).
ImageBuffer apply_distortion(const ImageBuffer& img, const DistortionSpec& spec,
                             std::string_view stream_id);

}  // namespace texshape
