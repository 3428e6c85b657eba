#include "texshape/distort/fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

#include "texshape/error.hpp"

namespace texshape::fft {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

void transform(ComplexGrid& grid, int sign) {
  const std::size_t n = grid.values.size();
  FftwBuffer buf(n);
  PlanPtr plan;
  {
    std::lock_guard lock(planner_mutex());
    // Row-major: slow dimension (height) first.
    plan.reset(fftw_plan_dft_2d(grid.height, grid.width, buf.data, buf.data, sign,
                                FFTW_ESTIMATE));
  }
  if (!plan) throw Error(Errc::invalid_state, "fftw planning failed");
  for (std::size_t i = 0; i < n; ++i) {
    buf.data[i][0] = grid.values[i].real();
    buf.data[i][1] = grid.values[i].imag();
  }
  fftw_execute(plan.get());
  for (std::size_t i = 0; i < n; ++i) grid.values[i] = {buf.data[i][0], buf.data[i][1]};
}

}  // namespace

ComplexGrid forward(std::span<const double> real, int width, int height) {
  if (width <= 0 || height <= 0 ||
      real.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(Errc::invalid_argument, "fft::forward: size mismatch");
  }
  ComplexGrid grid{width, height, {}};
  grid.values.assign(real.begin(), real.end());
  transform(grid, FFTW_FORWARD);
  return grid;
}

std::vector<double> inverse_real(const ComplexGrid& grid) {
  ComplexGrid work = grid;
  transform(work, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(work.values.size());
  std::vector<double> out(work.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = work.values[i].real() * scale;
  return out;
}

}  // namespace texshape::fft
