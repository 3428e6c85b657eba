#include "texshape/distort/distortions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "texshape/distort/fft.hpp"
#include "texshape/distort/gaussian.hpp"
#include "texshape/error.hpp"
#include "texshape/simd/kernels.hpp"

namespace texshape {

namespace {

void require_range(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    throw Error(Errc::invalid_argument, std::string(what) + " must lie in [" + std::to_string(lo) +
                                            ", " + std::to_string(hi) + "], got " +
                                            std::to_string(value));
  }
}

}  // namespace

ImageBuffer apply_uniform_noise(const ImageBuffer& grey, double width, RngStream& rng) {
  require_grey(grey, "apply_uniform_noise");
  require_range(width, 0.0, 1.0, "uniform noise width");
  if (width == 0.0) return grey;
  ImageBuffer out = grey;
  for (float& px : out.data()) {
    const double p = px;
    double v = p + rng.uniform(-width, width);
    while (v < 0.0 || v > 1.0) v = p + rng.uniform(-width, width);
    px = static_cast<float>(v);
  }
  return out;
}

ImageBuffer apply_contrast(const ImageBuffer& grey, double factor) {
  require_grey(grey, "apply_contrast");
  require_range(factor, 0.0, 1.0, "contrast factor");
  ImageBuffer out(grey.width(), grey.height(), 1);
  simd::active().contrast(grey.data().data(), out.data().data(), grey.size(),
                          static_cast<float>(factor));
  return out;
}

ImageBuffer apply_lowpass(const ImageBuffer& grey, double sigma) {
  require_grey(grey, "apply_lowpass");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "low-pass sigma must be >= 0");
  }
  if (sigma == 0.0) return grey;
  ImageBuffer out = gaussian_blur(grey, sigma);
  simd::active().clamp01(out.data().data(), out.data().data(), out.size());
  return out;
}

ImageBuffer highpass_unclipped(const ImageBuffer& grey, double sigma) {
  require_grey(grey, "apply_highpass");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "high-pass sigma must be > 0");
  }
  const ImageBuffer blurred = gaussian_blur(grey, sigma);
  ImageBuffer out(grey.width(), grey.height(), 1);
  simd::active().highpass_raw(grey.data().data(), blurred.data().data(), out.data().data(),
                              out.size());
  return out;
}

ImageBuffer apply_highpass(const ImageBuffer& grey, double sigma) {
  require_grey(grey, "apply_highpass");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "high-pass sigma must be > 0");
  }
  const ImageBuffer blurred = gaussian_blur(grey, sigma);
  ImageBuffer out(grey.width(), grey.height(), 1);
  simd::active().highpass_combine(grey.data().data(), blurred.data().data(), out.data().data(),
                                  out.size());
  return out;
}

std::vector<double> phase_noise_unclipped(const ImageBuffer& grey, double width_degrees,
                                          RngStream& rng) {
  require_grey(grey, "apply_phase_noise");
  require_range(width_degrees, 0.0, 180.0, "phase noise width");
  const int w = grey.width();
  const int h = grey.height();
  std::vector<double> real(grey.data().begin(), grey.data().end());
  auto spectrum = fft::forward(real, w, h);
  const double width_rad = width_degrees * std::numbers::pi / 180.0;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * w + u;
      const std::size_t j = fft::conjugate_index(u, v, w, h);
      if (j <= i) continue;  // self-conjugate, or already handled via its partner
      const double delta = rng.uniform(-1.0, 1.0) * width_rad;
      const std::complex<double> rot = std::polar(1.0, delta);
      spectrum.values[i] *= rot;
      spectrum.values[j] *= std::conj(rot);
    }
  }
  return fft::inverse_real(spectrum);
}

ImageBuffer apply_phase_noise(const ImageBuffer& grey, double width_degrees, RngStream& rng) {
  const auto raw = phase_noise_unclipped(grey, width_degrees, rng);
  ImageBuffer out(grey.width(), grey.height(), 1);
  auto dst = out.data();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    dst[i] = static_cast<float>(std::clamp(raw[i], 0.0, 1.0));
  }
  return out;
}

}  // namespace texshape
