#include <cmath>

#include "texshape/distort/distortions.hpp"
#include "texshape/distort/gaussian.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/resample.hpp"

namespace texshape {

namespace {

ImageBuffer white_noise(int w, int h, RngStream& rng) {
  ImageBuffer plane(w, h, 1);
  for (float& v : plane.data()) v = static_cast<float>(rng.normal());
  return plane;
}

double rms(const ImageBuffer& plane) {
  double acc = 0.0;
  for (float v : plane.data()) acc += static_cast<double>(v) * v;
  return std::sqrt(acc / static_cast<double>(plane.size()));
}

// Unit-RMS multiscale field for one displacement axis.
std::vector<double> axis_field(int w, int h, const EidolonParams& p, RngStream& rng) {
  const double shared_w = std::sqrt(p.coherence);
  const double own_w = std::sqrt(1.0 - p.coherence);
  const ImageBuffer shared = white_noise(w, h, rng);
  std::vector<double> field(static_cast<std::size_t>(w) * h, 0.0);
  for (int k = 0; k < kEidolonScales; ++k) {
    ImageBuffer mixed = white_noise(w, h, rng);
    auto m = mixed.data();
    const auto s = shared.data();
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = static_cast<float>(shared_w * s[i] + own_w * m[i]);
    }
    const ImageBuffer smooth = gaussian_blur(mixed, p.grain * std::ldexp(1.0, k));
    const double norm = rms(smooth);
    if (norm == 0.0) continue;
    const auto sm = smooth.data();
    for (std::size_t i = 0; i < field.size(); ++i) field[i] += sm[i] / norm;
  }
  double acc = 0.0;
  for (double v : field) acc += v * v;
  const double total = std::sqrt(acc / static_cast<double>(field.size()));
  if (total > 0.0) {
    for (double& v : field) v /= total;
  }
  return field;
}

}  // namespace

ImageBuffer apply_eidolon(const ImageBuffer& grey, const EidolonParams& params, RngStream& rng) {
  require_grey(grey, "apply_eidolon");
  if (!(params.reach >= 0.0) || !std::isfinite(params.reach)) {
    throw Error(Errc::invalid_argument, "eidolon reach must be >= 0");
  }
  if (!(params.coherence >= 0.0 && params.coherence <= 1.0)) {
    throw Error(Errc::invalid_argument, "eidolon coherence must lie in [0, 1]");
  }
  if (!(params.grain > 0.0) || !std::isfinite(params.grain)) {
    throw Error(Errc::invalid_argument, "eidolon grain must be > 0");
  }
  if (params.reach == 0.0) return grey;

  const int w = grey.width();
  const int h = grey.height();
  const auto dx = axis_field(w, h, params, rng);
  const auto dy = axis_field(w, h, params, rng);
  ImageBuffer out(w, h, 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      out.at(x, y) = sample_bilinear(grey, x + params.reach * dx[i], y + params.reach * dy[i], 0);
    }
  }
  return out;
}

}  // namespace texshape
