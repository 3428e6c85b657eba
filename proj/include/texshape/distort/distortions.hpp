#pragma once

#include <vector>

#include "texshape/imgcore/image.hpp"
#include "texshape/imgcore/rng.hpp"

namespace texshape {

// All distortions take single-channel images in [0,1] and return the same
// shape with samples in [0,1]. Stochastic ones consume draws from `rng`.

// p + u, u ~ U[-width, width], redrawn per pixel until p + u lies in [0,1].
// 0 <= width <= 1.
ImageBuffer apply_uniform_noise(const ImageBuffer& grey, double width, RngStream& rng);

// (p - 0.5) * factor + 0.5, 0 <= factor <= 1.
ImageBuffer apply_contrast(const ImageBuffer& grey, double factor);

// Gaussian blur, kernel truncated at 4 sigma, mirrored borders; sigma >= 0.
ImageBuffer apply_lowpass(const ImageBuffer& grey, double sigma);

// clip(p - lowpass(p, sigma) + 0.5); sigma > 0.
ImageBuffer apply_highpass(const ImageBuffer& grey, double sigma);
// Same without the final clip.
ImageBuffer highpass_unclipped(const ImageBuffer& grey, double sigma);

// Adds U[-width, width] degrees to the phase of every non-self-conjugate
// frequency, with the conjugate partner receiving the negated offset so the
// inverse stays real. DC and the (real) Nyquist bins keep their phase.
// 0 <= width <= 180.
ImageBuffer apply_phase_noise(const ImageBuffer& grey, double width_degrees, RngStream& rng);
// Pre-clip inverse transform of the above, row-major.
std::vector<double> phase_noise_unclipped(const ImageBuffer& grey, double width_degrees,
                                          RngStream& rng);

// Disarray approximation of the eidolon family.
//
// Each displacement axis is a sum of kEidolonScales Gaussian random fields
// with correlation lengths grain * 2^k. Scale k blurs the white noise
// sqrt(c) * shared + sqrt(1 - c) * own_k, so coherence 1 makes every scale a
// smoothing of one common field and coherence 0 makes the scales
// independent. The summed field is scaled to RMS = reach pixels; the image
// is resampled bilinearly at (x + dx, y + dy) with mirrored borders.
struct EidolonParams {
  double reach = 0.0;      // pixels, >= 0
  double coherence = 1.0;  // [0, 1]
  double grain = 10.0;     // pixels, > 0
};

inline constexpr int kEidolonScales = 4;

ImageBuffer apply_eidolon(const ImageBuffer& grey, const EidolonParams& params, RngStream& rng);

}  // namespace texshape
