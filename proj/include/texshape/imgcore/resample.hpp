#pragma once

#include "texshape/imgcore/image.hpp"

namespace texshape {

// Bilinear sample at continuous coordinates (pixel centres on integers),
// mirror-reflected outside the image.
float sample_bilinear(const ImageBuffer& img, double x, double y, int channel) noexcept;

// Rotation about the image centre by angle_degrees (counter-clockwise),
// same output size. Out-of-image source positions read from the mirrored
// extension of the input, so no undefined samples appear. Multiples of 90
// degrees are exact.
ImageBuffer rotate(const ImageBuffer& img, double angle_degrees);

}  // namespace texshape
