#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "texshape/imgcore/image.hpp"

namespace texshape {

// Reads an 8-bit greyscale or RGB PNG; samples are byte / 255.
// Errors: not_found (missing file), unsupported_format (alpha, palette,
// 16-bit), corrupt_data (undecodable stream).
ImageBuffer load_image(const std::filesystem::path& path);

// Writes an 8-bit PNG with bytes round(value * 255), values clamped to [0,1].
void save_png(const ImageBuffer& img, const std::filesystem::path& path);

// In-memory encode, used by the trial service to stream masks.
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);

std::uint8_t quantize_byte(float value) noexcept;

}  // namespace texshape
