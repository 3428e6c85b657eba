#pragma once

#include <complex>
#include <span>
#include <vector>

namespace texshape::fft {

// Row-major complex grid.
struct ComplexGrid {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> values;

  std::complex<double>& at(int u, int v) { return values[static_cast<std::size_t>(v) * width + u]; }
  const std::complex<double>& at(int u, int v) const {
    return values[static_cast<std::size_t>(v) * width + u];
  }
};

// Unnormalised forward transform: F(u,v) = sum x(m,n) exp(-2 pi i (um/W + vn/H)).
ComplexGrid forward(std::span<const double> real, int width, int height);

// Inverse with 1/(W*H) scaling; returns the real part.
std::vector<double> inverse_real(const ComplexGrid& grid);

// Index of the Hermitian partner (-u, -v) mod (W, H) in row-major order.
inline std::size_t conjugate_index(int u, int v, int width, int height) noexcept {
  const int cu = (width - u) % width;
  const int cv = (height - v) % height;
  return static_cast<std::size_t>(cv) * width + cu;
}

// Signed frequency index: k for k <= n/2, k - n above.
inline int signed_frequency(int k, int n) noexcept { return k <= n / 2 ? k : k - n; }

}  // namespace texshape::fft
