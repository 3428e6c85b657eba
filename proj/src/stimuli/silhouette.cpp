#include <queue>
#include <vector>

#include "texshape/error.hpp"
#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/png_io.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape {

namespace {

ImageBuffer binarise(const ImageBuffer& img, float threshold) {
  const ImageBuffer grey = to_greyscale(img);
  ImageBuffer out(grey.width(), grey.height(), 1);
  auto dst = out.data();
  const auto src = grey.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] < threshold ? 0.0f : 1.0f;
  return out;
}

// Labels 8-connected components of `mask` and keeps only the largest.
void keep_largest_component(std::vector<std::uint8_t>& mask, int w, int h) {
  std::vector<int> label(mask.size(), -1);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || label[start] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t count = 0;
    stack.push_back(start);
    label[start] = id;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      ++count;
      const int x = static_cast<int>(p % w);
      const int y = static_cast<int>(p / w);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
          if (mask[q] && label[q] < 0) {
            label[q] = id;
            stack.push_back(q);
          }
        }
      }
    }
    sizes.push_back(count);
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(sizes.size()); ++i) {
    if (sizes[i] > sizes[best]) best = i;
  }
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] && label[i] == best;
}

// Background pixels not 4-connected to the border become foreground.
void fill_holes(std::vector<std::uint8_t>& mask, int w, int h) {
  std::vector<std::uint8_t> outside(mask.size(), 0);
  std::queue<std::size_t> frontier;
  auto seed = [&](int x, int y) {
    const std::size_t p = static_cast<std::size_t>(y) * w + x;
    if (!mask[p] && !outside[p]) {
      outside[p] = 1;
      frontier.push(p);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!frontier.empty()) {
    const std::size_t p = frontier.front();
    frontier.pop();
    const int x = static_cast<int>(p % w);
    const int y = static_cast<int>(p / w);
    if (x > 0) seed(x - 1, y);
    if (x + 1 < w) seed(x + 1, y);
    if (y > 0) seed(x, y - 1);
    if (y + 1 < h) seed(x, y + 1);
  }
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = !outside[i];
}

}  // namespace

ImageBuffer make_silhouette(const ImageBuffer& img, float threshold,
                            const std::optional<std::filesystem::path>& override_mask) {
  std::error_code ec;
  if (override_mask && std::filesystem::is_regular_file(*override_mask, ec)) {
    const ImageBuffer mask = load_image(*override_mask);
    if (mask.width() != img.width() || mask.height() != img.height()) {
      throw Error(Errc::invalid_argument,
                  "override mask " + override_mask->string() + " has the wrong size");
    }
    return binarise(mask, 0.5f);
  }

  const ImageBuffer grey = to_greyscale(img);
  const int w = grey.width();
  const int h = grey.height();
  std::vector<std::uint8_t> fg(grey.size());
  bool any = false;
  const auto src = grey.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    fg[i] = src[i] < threshold;
    any = any || fg[i];
  }
  if (!any) throw Error(Errc::invalid_argument, "make_silhouette: empty foreground");
  keep_largest_component(fg, w, h);
  fill_holes(fg, w, h);

  ImageBuffer out(w, h, 1);
  auto dst = out.data();
  for (std::size_t i = 0; i < fg.size(); ++i) dst[i] = fg[i] ? 0.0f : 1.0f;
  return out;
}

}  // namespace texshape
