#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "texshape/distort/gaussian.hpp"
#include "texshape/imgcore/color.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape {

CannyThresholds canny_thresholds(std::span<const float> magnitudes) {
  std::vector<float> nonzero;
  for (float m : magnitudes) {
    if (m > 0.0f) nonzero.push_back(m);
  }
  if (nonzero.empty()) return {};
  // Nearest rank: the ceil(p * n)-th smallest value.
  auto rank = static_cast<std::size_t>(std::ceil(kCannyHighPercentile * nonzero.size()));
  rank = std::clamp<std::size_t>(rank, 1, nonzero.size()) - 1;
  std::nth_element(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(rank),
                   nonzero.end());
  const float high = nonzero[rank];
  return {static_cast<float>(kCannyLowRatio * high), high};
}

std::vector<std::uint8_t> canny(const ImageBuffer& grey) {
  require_grey(grey, "canny");
  const int w = grey.width();
  const int h = grey.height();
  auto px = [&](int x, int y) { return grey.at(reflect_index(x, w), reflect_index(y, h)); };

  std::vector<float> mag(grey.size());
  std::vector<std::uint8_t> dir(grey.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                       (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const float gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                       (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = std::hypot(gx, gy);
      // Quantise the gradient direction to 0, 45, 90, 135 degrees.
      double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
      if (angle < 0) angle += 180.0;
      dir[i] = static_cast<std::uint8_t>(static_cast<int>(std::floor((angle + 22.5) / 45.0)) % 4);
    }
  }

  static constexpr int kStep[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
  auto mag_at = [&](int x, int y) -> float {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0f;
    return mag[static_cast<std::size_t>(y) * w + x];
  };
  std::vector<float> thin(grey.size(), 0.0f);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const float m = mag[i];
      if (m <= 0.0f) continue;
      const int sx = kStep[dir[i]][0];
      const int sy = kStep[dir[i]][1];
      // Strict on one side, inclusive on the other: a symmetric ridge
      // thins to exactly one pixel.
      if (m > mag_at(x - sx, y - sy) && m >= mag_at(x + sx, y + sy)) thin[i] = m;
    }
  }

  const auto t = canny_thresholds(mag);
  std::vector<std::uint8_t> edge(grey.size(), 0);
  if (t.high <= 0.0f) return edge;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (thin[i] >= t.high && thin[i] > 0.0f) {
      edge[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t p = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(p % w);
    const int y = static_cast<int>(p / w);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
        if (!edge[q] && thin[q] > 0.0f && thin[q] >= t.low) {
          edge[q] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return edge;
}

ImageBuffer make_edges(const ImageBuffer& img) {
  const ImageBuffer blurred = gaussian_blur(to_greyscale(img), kEdgeBlurSigma);
  const auto edge = canny(blurred);
  ImageBuffer out(img.width(), img.height(), 1);
  auto dst = out.data();
  for (std::size_t i = 0; i < edge.size(); ++i) dst[i] = edge[i] ? 0.0f : 1.0f;
  return out;
}

}  // namespace texshape
