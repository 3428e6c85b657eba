#pragma once

#include <vector>

#include "texshape/imgcore/image.hpp"

namespace texshape {

// Half kernel taps[0..radius] of a normalised 1-D Gaussian truncated at
// radius = ceil(4 sigma); taps[0] + 2 * sum(taps[1..]) == 1 up to rounding.
std::vector<float> gaussian_half_kernel(double sigma);

// Separable Gaussian blur of a single-channel image with mirror-reflected
// borders. sigma == 0 returns the input. No clipping, so it also serves
// signed planes such as noise fields.
ImageBuffer gaussian_blur(const ImageBuffer& grey, double sigma);

}  // namespace texshape
