#pragma once

#include "texshape/imgcore/image.hpp"

namespace texshape {

// ITU-R 709 luma weights. Luma is accumulated in double and rounded once,
// so a grey pixel (g,g,g) maps back to exactly g.
inline constexpr double kLumaR = 0.2125;
inline constexpr double kLumaG = 0.7154;
inline constexpr double kLumaB = 0.0721;

// 3-channel -> 1-channel luminance; 1-channel input is returned unchanged.
ImageBuffer to_greyscale(const ImageBuffer& img);

// 1-channel -> 3 identical channels (the CNN input convention).
ImageBuffer stack_channels(const ImageBuffer& grey);

}  // namespace texshape
