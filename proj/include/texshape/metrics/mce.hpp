#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string_view>

namespace texshape::metrics {

inline constexpr int kCorruptionCount = 15;

// Canonical order: noise, blur, weather, digital.
inline constexpr std::array<std::string_view, kCorruptionCount> kCorruptionNames = {
    "gaussian_noise", "shot_noise", "impulse_noise", "defocus_blur", "glass_blur",
    "motion_blur",    "zoom_blur",  "snow",          "frost",        "fog",
    "brightness",     "contrast",   "elastic",       "pixelate",     "jpeg",
};

using CorruptionValues = std::array<double, kCorruptionCount>;

struct CorruptionReport {
  CorruptionValues errors{};
  std::optional<CorruptionValues> baseline;
  // errors themselves, or 100 * error / baseline in normalized mode.
  CorruptionValues ce{};
  bool normalized = false;
  double mce = 0.0;
};

// Plain mean of the 15 values; with a baseline each value is first
// normalized. Throws invalid_argument on a wrong count or a nonpositive
// baseline entry.
CorruptionReport compute_mce(std::span<const double> errors,
                             std::optional<std::span<const double>> baseline = std::nullopt);

// CSV with header "corruption,error" and one row per corruption name, any
// order; each name exactly once.
CorruptionValues read_corruption_csv(std::istream& in);
CorruptionValues read_corruption_csv(const std::filesystem::path& path);

}  // namespace texshape::metrics
