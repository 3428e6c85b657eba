#include "texshape/imgcore/png_io.hpp"

#include <png.h>

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "texshape/error.hpp"

namespace texshape {

namespace {

struct PngImageGuard {
  png_image* image;
  ~PngImageGuard() { png_image_free(image); }
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> to_bytes(const ImageBuffer& img) {
  std::vector<std::uint8_t> bytes(img.size());
  const auto src = img.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize_byte(src[i]);
  return bytes;
}

png_image describe(const ImageBuffer& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  return image;
}

}  // namespace

std::uint8_t quantize_byte(float value) noexcept {
  if (!(value > 0.0f)) return 0;
  if (value >= 1.0f) return 255;
  return static_cast<std::uint8_t>(std::lround(static_cast<double>(value) * 255.0));
}

ImageBuffer load_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(Errc::not_found, "image not found: " + path.string());
  }
  const auto bytes = read_file(path);

  static constexpr std::array<std::uint8_t, 8> kSignature = {137, 80, 78, 71, 13, 10, 26, 10};
  if (bytes.size() < kSignature.size() ||
      std::memcmp(bytes.data(), kSignature.data(), kSignature.size()) != 0) {
    throw Error(Errc::corrupt_data, "not a PNG stream: " + path.string());
  }

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  PngImageGuard guard{&image};
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(Errc::corrupt_data, path.string() + ": " + image.message);
  }

  const png_uint_32 fmt = image.format;
  if ((fmt & PNG_FORMAT_FLAG_ALPHA) != 0) {
    throw Error(Errc::unsupported_format, path.string() + ": alpha channel not supported");
  }
  if ((fmt & PNG_FORMAT_FLAG_LINEAR) != 0) {
    throw Error(Errc::unsupported_format, path.string() + ": only 8-bit PNGs are supported");
  }
  // Palette images are expanded by libpng into GRAY or RGB, which is fine.
  const int channels = (fmt & PNG_FORMAT_FLAG_COLOR) != 0 ? 3 : 1;
  image.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;

  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    throw Error(Errc::corrupt_data, path.string() + ": " + image.message);
  }

  std::vector<float> data(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    data[i] = static_cast<float>(pixels[i]) / 255.0f;
  }
  return ImageBuffer(static_cast<int>(image.width), static_cast<int>(image.height), channels,
                     std::move(data));
}

void save_png(const ImageBuffer& img, const std::filesystem::path& path) {
  if (img.empty()) throw Error(Errc::invalid_argument, "save_png: empty image");
  const auto bytes = to_bytes(img);
  png_image image = describe(img);
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::io_error, "cannot write " + path.string() + ": " + msg);
  }
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
  if (img.empty()) throw Error(Errc::invalid_argument, "encode_png: empty image");
  const auto bytes = to_bytes(img);
  png_image image = describe(img);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, bytes.data(), 0, nullptr)) {
    throw Error(Errc::io_error, std::string("png encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, bytes.data(), 0, nullptr)) {
    throw Error(Errc::io_error, std::string("png encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace texshape
