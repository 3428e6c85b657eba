#include "texshape/distort/gaussian.hpp"

#include <cmath>

#include "texshape/error.hpp"
#include "texshape/simd/kernels.hpp"

namespace texshape {

std::vector<float> gaussian_half_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "gaussian kernel needs a positive finite sigma");
  }
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> w(static_cast<std::size_t>(radius) + 1);
  double total = 0.0;
  for (int k = 0; k <= radius; ++k) {
    w[k] = std::exp(-0.5 * (k / sigma) * (k / sigma));
    total += k == 0 ? w[k] : 2.0 * w[k];
  }
  std::vector<float> taps(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) taps[k] = static_cast<float>(w[k] / total);
  return taps;
}

ImageBuffer gaussian_blur(const ImageBuffer& grey, double sigma) {
  require_grey(grey, "gaussian_blur");
  if (sigma < 0.0 || std::isnan(sigma)) {
    throw Error(Errc::invalid_argument, "gaussian_blur: sigma must be >= 0");
  }
  if (sigma == 0.0) return grey;
  const auto taps = gaussian_half_kernel(sigma);
  const int radius = static_cast<int>(taps.size()) - 1;
  const auto& k = simd::active();
  ImageBuffer tmp(grey.width(), grey.height(), 1);
  ImageBuffer out(grey.width(), grey.height(), 1);
  k.convolve_rows(grey.data().data(), tmp.data().data(), grey.width(), grey.height(), taps.data(),
                  radius);
  k.convolve_cols(tmp.data().data(), out.data().data(), grey.width(), grey.height(), taps.data(),
                  radius);
  return out;
}

}  // namespace texshape
