#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "texshape/imgcore/image.hpp"
#include "texshape/imgcore/rng.hpp"

namespace texshape {

// --- silhouettes -----------------------------------------------------------

inline constexpr float kSilhouetteThreshold = 0.95f;

// Black (0) object on white (1). Pipeline: greyscale, foreground where
// grey < threshold, keep the largest 8-connected component, fill holes
// (background pixels not 4-connected to the border). When override_mask
// names an existing file it is loaded and binarised at 0.5 instead.
// Throws invalid_argument when thresholding leaves no foreground.
ImageBuffer make_silhouette(const ImageBuffer& img, float threshold = kSilhouetteThreshold,
                            const std::optional<std::filesystem::path>& override_mask = {});

// --- edges -----------------------------------------------------------------

inline constexpr double kEdgeBlurSigma = 2.0;
inline constexpr double kCannyHighPercentile = 0.70;
inline constexpr double kCannyLowRatio = 0.40;

struct CannyThresholds {
  float low = 0.0f;
  float high = 0.0f;
};

// High threshold: nearest-rank 70th percentile of the nonzero gradient
// magnitudes; low = 0.4 * high. Both zero when there is no gradient.
CannyThresholds canny_thresholds(std::span<const float> magnitudes);

// Binary edge mask (1 = edge) of a single-channel image: Sobel gradient,
// non-maximum suppression over four directions, hysteresis with 8-connected
// growth from strong pixels.
std::vector<std::uint8_t> canny(const ImageBuffer& grey);

// Greyscale, Gaussian blur sigma 2, Canny, inverted: black edges on white.
ImageBuffer make_edges(const ImageBuffer& img);

// --- rotated texture bank --------------------------------------------------

inline constexpr int kTextureBankAngles = 10;
inline constexpr std::size_t kTextureCount = 48;

// n angles uniformly spaced in [0, 360): 0, 36, ..., 324 for n = 10.
std::vector<double> texture_bank_angles(int n = kTextureBankAngles);

struct TextureBankEntry {
  std::size_t source_index;
  int angle_index;
  double angle_degrees;
};

// Rotations are rendered on demand: 480 colour 224x224 images would hold
// several hundred megabytes. Entry i = source (i / angles), angle (i % angles).
class TextureBank {
 public:
  TextureBank(std::vector<ImageBuffer> sources, std::vector<double> angles);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<TextureBankEntry>& index() const noexcept { return entries_; }
  const TextureBankEntry& entry(std::size_t i) const { return entries_.at(i); }
  // Rotation about the centre; the mirrored extension of the source acts as
  // the enlarged canvas so the centre crop has no undefined samples.
  ImageBuffer render(std::size_t i) const;

 private:
  std::vector<ImageBuffer> sources_;
  std::vector<double> angles_;
  std::vector<TextureBankEntry> entries_;
};

// strict: require exactly 48 inputs.
TextureBank build_texture_bank(std::vector<ImageBuffer> textures, int angles = kTextureBankAngles,
                               bool strict = false);

// --- filled silhouettes ----------------------------------------------------

// Texture where the silhouette is black (< 0.5), white (1.0) elsewhere.
// Output has the texture's channel count.
ImageBuffer fill_silhouette(const ImageBuffer& silhouette, const ImageBuffer& texture);

// Picks `count` bank indices uniformly without replacement; when count
// exceeds the bank, the bank is reshuffled and drawing continues.
std::vector<std::size_t> assign_bank_textures(std::size_t count, std::size_t bank_size,
                                              RngStream& rng);

// --- masks -----------------------------------------------------------------

// Full-contrast pink noise: amplitude 1/f (radial frequency in cycles per
// image, DC amplitude 0), phases uniform in [0, 2pi) with Hermitian
// symmetry, affinely rescaled so min = 0 and max = 1 exactly.
ImageBuffer pink_noise_mask(int size, RngStream& rng);

}  // namespace texshape
