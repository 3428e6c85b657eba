#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "texshape/distort/fft.hpp"
#include "texshape/error.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape {

ImageBuffer pink_noise_mask(int size, RngStream& rng) {
  if (size <= 0) throw Error(Errc::invalid_argument, "pink_noise_mask: size must be positive");
  if (size == 1) return ImageBuffer(1, 1, 1, 0.0f);

  fft::ComplexGrid spectrum{size, size, std::vector<std::complex<double>>(
                                            static_cast<std::size_t>(size) * size)};
  for (int v = 0; v < size; ++v) {
    for (int u = 0; u < size; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * size + u;
      const std::size_t j = fft::conjugate_index(u, v, size, size);
      if (j < i) continue;  // filled together with its partner
      const double fu = fft::signed_frequency(u, size);
      const double fv = fft::signed_frequency(v, size);
      const double f = std::hypot(fu, fv);
      if (f == 0.0) continue;  // DC amplitude 0
      const double amplitude = 1.0 / f;
      if (i == j) {
        // Self-conjugate Nyquist bins must stay real.
        spectrum.values[i] = amplitude;
        continue;
      }
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      spectrum.values[i] = std::polar(amplitude, phase);
      spectrum.values[j] = std::polar(amplitude, -phase);
    }
  }
  const auto raw = fft::inverse_real(spectrum);
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double min = *lo;
  const double span = *hi - *lo;
  ImageBuffer out(size, size, 1);
  auto dst = out.data();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    dst[i] = static_cast<float>((raw[i] - min) / span);
  }
  return out;
}

}  // namespace texshape
