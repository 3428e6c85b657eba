#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace texshape {

// Side length of every experiment stimulus.
inline constexpr int kStimulusSize = 224;

// H x W x C raster, row-major with interleaved channels, samples in [0,1].
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, int channels, float fill = 0.0f);
  ImageBuffer(int width, int height, int channels, std::vector<float> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  float at(int x, int y, int c = 0) const noexcept { return data_[index(x, y, c)]; }
  float& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  // True when every sample lies in [0,1] (and is not NaN).
  bool in_unit_range() const noexcept;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

// Throws Error(invalid_argument) unless img is single-channel and non-empty.
void require_grey(const ImageBuffer& img, const char* what);

// Root-mean-square difference over all samples; shapes must match.
double rms_difference(const ImageBuffer& a, const ImageBuffer& b);

// Mirror index into [0, n): ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
// Valid for any integer, including offsets larger than n.
inline int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

}  // namespace texshape
