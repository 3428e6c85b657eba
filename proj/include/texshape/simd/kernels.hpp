#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace texshape::simd {

enum class Level { scalar, avx2 };

std::string_view to_string(Level level) noexcept;

// Kernel table. Every variant produces bit-identical output to the scalar
// reference: no FMA, and the per-output summation order is the same.
struct Kernels {
  Level level;

  // out[i] = float(kR*rgb[3i] + kG*rgb[3i+1] + kB*rgb[3i+2]), in double
  void (*luma)(const float* rgb, float* out, std::size_t pixels);

  // out[i] = clamp((in[i] - 0.5) * factor + 0.5, 0, 1), in double
  void (*contrast)(const float* in, float* out, std::size_t n, float factor);

  // out[i] = clamp(in[i], 0, 1)
  void (*clamp01)(const float* in, float* out, std::size_t n);

  // out[i] = clamp(in[i] - blurred[i] + 0.5, 0, 1)
  void (*highpass_combine)(const float* in, const float* blurred, float* out, std::size_t n);

  // out[i] = in[i] - blurred[i] + 0.5 (no clip)
  void (*highpass_raw)(const float* in, const float* blurred, float* out, std::size_t n);

  // Horizontal 1-D convolution of a single-channel plane with a symmetric
  // kernel taps[0..radius] (taps[k] weights offsets +k and -k). Borders are
  // mirror-reflected. Sum order per output: taps[0]*c, then k = 1..radius
  // adding taps[k]*(left + right).
  void (*convolve_rows)(const float* src, float* dst, int width, int height,
                        const float* taps, int radius);

  // Same as convolve_rows along the vertical axis.
  void (*convolve_cols)(const float* src, float* dst, int width, int height,
                        const float* taps, int radius);
};

const Kernels& scalar_kernels() noexcept;
#if defined(TEXSHAPE_HAVE_AVX2)
const Kernels& avx2_kernels() noexcept;
#endif

// Highest level the running CPU supports (and the build was compiled for).
Level detected_level() noexcept;

// Kernels for a given level; falls back to scalar when unavailable.
const Kernels& kernels_for(Level level) noexcept;

// Process-wide active table, initialised to detected_level().
const Kernels& active() noexcept;
Level active_level() noexcept;
// Clamped to detected_level(); returns the level actually set.
Level set_active_level(Level level) noexcept;

}  // namespace texshape::simd
