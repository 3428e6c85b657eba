#include "texshape/imgcore/image.hpp"

#include <cmath>
#include <string>

#include "texshape/error.hpp"

namespace texshape {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::not_found: return "not_found";
    case Errc::unsupported_format: return "unsupported_format";
    case Errc::corrupt_data: return "corrupt_data";
    case Errc::io_error: return "io_error";
    case Errc::parse_error: return "parse_error";
    case Errc::schema_mismatch: return "schema_mismatch";
    case Errc::invalid_state: return "invalid_state";
    case Errc::ambiguous: return "ambiguous";
    case Errc::missing_data: return "missing_data";
  }
  return "unknown";
}

namespace {

void check_dims(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::invalid_argument, "image dimensions must be positive");
  }
  if (channels != 1 && channels != 3) {
    throw Error(Errc::invalid_argument,
                "image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), fill);
}

ImageBuffer::ImageBuffer(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw Error(Errc::invalid_argument, "image data size does not match dimensions");
  }
}

bool ImageBuffer::in_unit_range() const noexcept {
  for (float v : data_) {
    if (!(v >= 0.0f && v <= 1.0f)) return false;
  }
  return true;
}

void require_grey(const ImageBuffer& img, const char* what) {
  if (img.empty()) throw Error(Errc::invalid_argument, std::string(what) + ": empty image");
  if (img.channels() != 1) {
    throw Error(Errc::invalid_argument, std::string(what) + ": expects a single-channel image");
  }
}

double rms_difference(const ImageBuffer& a, const ImageBuffer& b) {
  if (!a.same_shape(b)) throw Error(Errc::invalid_argument, "rms_difference: shape mismatch");
  if (a.empty()) return 0.0;
  double acc = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(da.size()));
}

}  // namespace texshape
