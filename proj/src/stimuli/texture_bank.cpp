#include <numeric>

#include "texshape/error.hpp"
#include "texshape/imgcore/resample.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape {

std::vector<double> texture_bank_angles(int n) {
  if (n <= 0) throw Error(Errc::invalid_argument, "texture bank needs at least one angle");
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) angles[i] = 360.0 * i / n;
  return angles;
}

TextureBank::TextureBank(std::vector<ImageBuffer> sources, std::vector<double> angles)
    : sources_(std::move(sources)), angles_(std::move(angles)) {
  for (const auto& s : sources_) {
    if (s.empty()) throw Error(Errc::invalid_argument, "texture bank: empty source image");
  }
  entries_.reserve(sources_.size() * angles_.size());
  for (std::size_t s = 0; s < sources_.size(); ++s) {
    for (std::size_t a = 0; a < angles_.size(); ++a) {
      entries_.push_back({s, static_cast<int>(a), angles_[a]});
    }
  }
}

ImageBuffer TextureBank::render(std::size_t i) const {
  const auto& e = entries_.at(i);
  return rotate(sources_[e.source_index], e.angle_degrees);
}

TextureBank build_texture_bank(std::vector<ImageBuffer> textures, int angles, bool strict) {
  if (strict && textures.size() != kTextureCount) {
    throw Error(Errc::invalid_argument, "texture bank expects " + std::to_string(kTextureCount) +
                                            " textures, got " + std::to_string(textures.size()));
  }
  return TextureBank(std::move(textures), texture_bank_angles(angles));
}

std::vector<std::size_t> assign_bank_textures(std::size_t count, std::size_t bank_size,
                                              RngStream& rng) {
  if (bank_size == 0) throw Error(Errc::invalid_argument, "texture bank is empty");
  std::vector<std::size_t> pool(bank_size);
  std::vector<std::size_t> out;
  out.reserve(count);
  std::size_t cursor = bank_size;
  while (out.size() < count) {
    if (cursor == bank_size) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      rng.shuffle(std::span<std::size_t>(pool));
      cursor = 0;
    }
    out.push_back(pool[cursor++]);
  }
  return out;
}

}  // namespace texshape
