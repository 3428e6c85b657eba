// Scalar reference kernels. The SIMD variants must match these bit for bit.

#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/image.hpp"
#include "texshape/simd/kernels.hpp"

namespace texshape::simd {

namespace {

inline float clamp_unit(float v) noexcept {
  // max/min written so NaN maps to 0, same as _mm256_max_ps(v, 0).
  v = v > 0.0f ? v : 0.0f;
  return v < 1.0f ? v : 1.0f;
}

inline double clamp_unit(double v) noexcept {
  v = v > 0.0 ? v : 0.0;
  return v < 1.0 ? v : 1.0;
}

void luma(const float* rgb, float* out, std::size_t pixels) {
  for (std::size_t i = 0; i < pixels; ++i) {
    const double r = rgb[3 * i];
    const double g = rgb[3 * i + 1];
    const double b = rgb[3 * i + 2];
    out[i] = static_cast<float>(kLumaR * r + kLumaG * g + kLumaB * b);
  }
}

void contrast(const float* in, float* out, std::size_t n, float factor) {
  const double f = factor;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = (static_cast<double>(in[i]) - 0.5) * f + 0.5;
    out[i] = static_cast<float>(clamp_unit(v));
  }
}

void clamp01(const float* in, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = clamp_unit(in[i]);
}

void highpass_combine(const float* in, const float* blurred, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = clamp_unit(in[i] - blurred[i] + 0.5f);
}

void highpass_raw(const float* in, const float* blurred, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = in[i] - blurred[i] + 0.5f;
}

void convolve_rows(const float* src, float* dst, int width, int height, const float* taps,
                   int radius) {
  for (int y = 0; y < height; ++y) {
    const float* row = src + static_cast<std::ptrdiff_t>(y) * width;
    float* out = dst + static_cast<std::ptrdiff_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      float acc = taps[0] * row[x];
      for (int k = 1; k <= radius; ++k) {
        const float pair = row[reflect_index(x - k, width)] + row[reflect_index(x + k, width)];
        acc = acc + taps[k] * pair;
      }
      out[x] = acc;
    }
  }
}

void convolve_cols(const float* src, float* dst, int width, int height, const float* taps,
                   int radius) {
  for (int y = 0; y < height; ++y) {
    float* out = dst + static_cast<std::ptrdiff_t>(y) * width;
    const float* centre = src + static_cast<std::ptrdiff_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      float acc = taps[0] * centre[x];
      for (int k = 1; k <= radius; ++k) {
        const float* up = src + static_cast<std::ptrdiff_t>(reflect_index(y - k, height)) * width;
        const float* down =
            src + static_cast<std::ptrdiff_t>(reflect_index(y + k, height)) * width;
        acc = acc + taps[k] * (up[x] + down[x]);
      }
      out[x] = acc;
    }
  }
}

constexpr Kernels kScalar{
    Level::scalar, luma, contrast, clamp01, highpass_combine, highpass_raw,
    convolve_rows, convolve_cols,
};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace texshape::simd
