#include "texshape/imgcore/resample.hpp"

#include <cmath>
#include <numbers>

namespace texshape {

float sample_bilinear(const ImageBuffer& img, double x, double y, int channel) noexcept {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const double ax = x - fx;
  const double ay = y - fy;
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const int w = img.width();
  const int h = img.height();
  const int xa = reflect_index(x0, w);
  const int xb = reflect_index(x0 + 1, w);
  const int ya = reflect_index(y0, h);
  const int yb = reflect_index(y0 + 1, h);
  const double top = (1.0 - ax) * img.at(xa, ya, channel) + ax * img.at(xb, ya, channel);
  const double bottom = (1.0 - ax) * img.at(xa, yb, channel) + ax * img.at(xb, yb, channel);
  const double v = (1.0 - ay) * top + ay * bottom;
  // Convex combination of [0,1] samples; guard against rounding overshoot.
  return static_cast<float>(v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v));
}

namespace {

// Exact cos/sin for multiples of 90 degrees.
void cos_sin_degrees(double degrees, double& c, double& s) {
  const double turns = std::fmod(degrees, 360.0);
  const double norm = turns < 0 ? turns + 360.0 : turns;
  if (norm == 0.0) { c = 1; s = 0; return; }
  if (norm == 90.0) { c = 0; s = 1; return; }
  if (norm == 180.0) { c = -1; s = 0; return; }
  if (norm == 270.0) { c = 0; s = -1; return; }
  const double rad = norm * std::numbers::pi / 180.0;
  c = std::cos(rad);
  s = std::sin(rad);
}

}  // namespace

ImageBuffer rotate(const ImageBuffer& img, double angle_degrees) {
  ImageBuffer out(img.width(), img.height(), img.channels());
  double c = 1.0;
  double s = 0.0;
  cos_sin_degrees(angle_degrees, c, s);
  const double cx = (img.width() - 1) / 2.0;
  const double cy = (img.height() - 1) / 2.0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      // Inverse map: output pixel -> source position (rotate by -angle).
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      for (int ch = 0; ch < img.channels(); ++ch) {
        out.at(x, y, ch) = sample_bilinear(img, sx, sy, ch);
      }
    }
  }
  return out;
}

}  // namespace texshape
