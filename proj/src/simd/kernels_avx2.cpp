// AVX2 kernels. Compiled with -mavx2 only; selected at runtime by dispatch.cpp.
// No FMA: every lane rounds exactly like the scalar reference.

#include <immintrin.h>

#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/image.hpp"
#include "texshape/simd/kernels.hpp"

namespace texshape::simd {

namespace {

inline float clamp_unit(float v) noexcept {
  v = v > 0.0f ? v : 0.0f;
  return v < 1.0f ? v : 1.0f;
}

inline __m256 clamp_unit(__m256 v) noexcept {
  v = _mm256_max_ps(v, _mm256_setzero_ps());
  return _mm256_min_ps(v, _mm256_set1_ps(1.0f));
}

inline __m256d clamp_unit(__m256d v) noexcept {
  v = _mm256_max_pd(v, _mm256_setzero_pd());
  return _mm256_min_pd(v, _mm256_set1_pd(1.0));
}

void luma(const float* rgb, float* out, std::size_t pixels) {
  const __m128i idx = _mm_setr_epi32(0, 3, 6, 9);
  const __m256d wr = _mm256_set1_pd(kLumaR);
  const __m256d wg = _mm256_set1_pd(kLumaG);
  const __m256d wb = _mm256_set1_pd(kLumaB);
  std::size_t i = 0;
  for (; i + 4 <= pixels; i += 4) {
    const float* base = rgb + 3 * i;
    const __m256d r = _mm256_cvtps_pd(_mm_i32gather_ps(base, idx, 4));
    const __m256d g = _mm256_cvtps_pd(_mm_i32gather_ps(base + 1, idx, 4));
    const __m256d b = _mm256_cvtps_pd(_mm_i32gather_ps(base + 2, idx, 4));
    const __m256d y = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(wr, r), _mm256_mul_pd(wg, g)),
                                    _mm256_mul_pd(wb, b));
    _mm_storeu_ps(out + i, _mm256_cvtpd_ps(y));
  }
  for (; i < pixels; ++i) {
    const double r = rgb[3 * i];
    const double g = rgb[3 * i + 1];
    const double b = rgb[3 * i + 2];
    out[i] = static_cast<float>(kLumaR * r + kLumaG * g + kLumaB * b);
  }
}

void contrast(const float* in, float* out, std::size_t n, float factor) {
  const double f = factor;
  const __m256d vf = _mm256_set1_pd(f);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_cvtps_pd(_mm_loadu_ps(in + i));
    const __m256d v = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(x, half), vf), half);
    _mm_storeu_ps(out + i, _mm256_cvtpd_ps(clamp_unit(v)));
  }
  for (; i < n; ++i) {
    double v = (static_cast<double>(in[i]) - 0.5) * f + 0.5;
    v = v > 0.0 ? v : 0.0;
    v = v < 1.0 ? v : 1.0;
    out[i] = static_cast<float>(v);
  }
}

void clamp01(const float* in, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(out + i, clamp_unit(_mm256_loadu_ps(in + i)));
  for (; i < n; ++i) out[i] = clamp_unit(in[i]);
}

void highpass_combine(const float* in, const float* blurred, float* out, std::size_t n) {
  const __m256 half = _mm256_set1_ps(0.5f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 d = _mm256_sub_ps(_mm256_loadu_ps(in + i), _mm256_loadu_ps(blurred + i));
    _mm256_storeu_ps(out + i, clamp_unit(_mm256_add_ps(d, half)));
  }
  for (; i < n; ++i) out[i] = clamp_unit(in[i] - blurred[i] + 0.5f);
}

void highpass_raw(const float* in, const float* blurred, float* out, std::size_t n) {
  const __m256 half = _mm256_set1_ps(0.5f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 d = _mm256_sub_ps(_mm256_loadu_ps(in + i), _mm256_loadu_ps(blurred + i));
    _mm256_storeu_ps(out + i, _mm256_add_ps(d, half));
  }
  for (; i < n; ++i) out[i] = in[i] - blurred[i] + 0.5f;
}

inline float row_tap_sum(const float* row, int x, int width, const float* taps, int radius) {
  float acc = taps[0] * row[x];
  for (int k = 1; k <= radius; ++k) {
    const float pair = row[reflect_index(x - k, width)] + row[reflect_index(x + k, width)];
    acc = acc + taps[k] * pair;
  }
  return acc;
}

void convolve_rows(const float* src, float* dst, int width, int height, const float* taps,
                   int radius) {
  // Interior outputs [radius, width - radius) need no reflection.
  const int lo = radius < width ? radius : width;
  const int hi = width - radius > lo ? width - radius : lo;
  for (int y = 0; y < height; ++y) {
    const float* row = src + static_cast<std::ptrdiff_t>(y) * width;
    float* out = dst + static_cast<std::ptrdiff_t>(y) * width;
    int x = 0;
    for (; x < lo; ++x) out[x] = row_tap_sum(row, x, width, taps, radius);
    for (; x + 8 <= hi; x += 8) {
      __m256 acc = _mm256_mul_ps(_mm256_set1_ps(taps[0]), _mm256_loadu_ps(row + x));
      for (int k = 1; k <= radius; ++k) {
        const __m256 pair =
            _mm256_add_ps(_mm256_loadu_ps(row + x - k), _mm256_loadu_ps(row + x + k));
        acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(taps[k]), pair));
      }
      _mm256_storeu_ps(out + x, acc);
    }
    for (; x < width; ++x) out[x] = row_tap_sum(row, x, width, taps, radius);
  }
}

void convolve_cols(const float* src, float* dst, int width, int height, const float* taps,
                   int radius) {
  for (int y = 0; y < height; ++y) {
    float* out = dst + static_cast<std::ptrdiff_t>(y) * width;
    const float* centre = src + static_cast<std::ptrdiff_t>(y) * width;
    int x = 0;
    for (; x + 8 <= width; x += 8) {
      __m256 acc = _mm256_mul_ps(_mm256_set1_ps(taps[0]), _mm256_loadu_ps(centre + x));
      for (int k = 1; k <= radius; ++k) {
        const float* up = src + static_cast<std::ptrdiff_t>(reflect_index(y - k, height)) * width;
        const float* down =
            src + static_cast<std::ptrdiff_t>(reflect_index(y + k, height)) * width;
        const __m256 pair = _mm256_add_ps(_mm256_loadu_ps(up + x), _mm256_loadu_ps(down + x));
        acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(taps[k]), pair));
      }
      _mm256_storeu_ps(out + x, acc);
    }
    for (; x < width; ++x) {
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

constexpr Kernels kAvx2{
    Level::avx2, luma, contrast, clamp01, highpass_combine, highpass_raw,
    convolve_rows, convolve_cols,
};

}  // namespace

const Kernels& avx2_kernels() noexcept { return kAvx2; }

}  // namespace texshape::simd
