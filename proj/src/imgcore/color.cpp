#include "texshape/imgcore/color.hpp"

#include "texshape/error.hpp"
#include "texshape/simd/kernels.hpp"

namespace texshape {

ImageBuffer to_greyscale(const ImageBuffer& img) {
  if (img.empty()) throw Error(Errc::invalid_argument, "to_greyscale: empty image");
  if (img.channels() == 1) return img;
  ImageBuffer out(img.width(), img.height(), 1);
  simd::active().luma(img.data().data(), out.data().data(), img.pixel_count());
  return out;
}

ImageBuffer stack_channels(const ImageBuffer& grey) {
  require_grey(grey, "stack_channels");
  ImageBuffer out(grey.width(), grey.height(), 3);
  const auto src = grey.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[3 * i] = dst[3 * i + 1] = dst[3 * i + 2] = src[i];
  }
  return out;
}

}  // namespace texshape
