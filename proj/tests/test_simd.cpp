#include <catch_amalgamated.hpp>

#include <cstring>
#include <random>
#include <vector>

#include "texshape/distort/gaussian.hpp"
#include "texshape/simd/kernels.hpp"

using namespace texshape;

namespace {

std::vector<float> random_plane(std::size_t n, std::uint64_t seed, float lo = -0.2f, float hi = 1.2f) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> u(lo, hi);
  std::vector<float> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

bool bit_equal(const std::vector<float>& a, const std::vector<float>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

}  // namespace

TEST_CASE("kernel selection", "[simd]") {
  REQUIRE(simd::scalar_kernels().level == simd::Level::scalar);
  REQUIRE(simd::kernels_for(simd::Level::scalar).level == simd::Level::scalar);
  const auto detected = simd::detected_level();
  REQUIRE(simd::kernels_for(detected).level == detected);
  REQUIRE(simd::set_active_level(simd::Level::scalar) == simd::Level::scalar);
  REQUIRE(simd::active().level == simd::Level::scalar);
  simd::set_active_level(detected);
  REQUIRE(simd::active_level() == detected);
}

TEST_CASE("vector kernels are bit-identical to scalar", "[simd]") {
  const auto& ref = simd::scalar_kernels();
  const auto& vec = simd::kernels_for(simd::Level::avx2);
  INFO("vector level: " << simd::to_string(vec.level));

  // Odd lengths exercise the tails.
  for (std::size_t n : {1u, 7u, 8u, 9u, 31u, 1000u, 50177u}) {
    const auto a = random_plane(n, n);
    const auto b = random_plane(n, n + 1);
    std::vector<float> r(n), v(n);

    ref.contrast(a.data(), r.data(), n, 0.37f);
    vec.contrast(a.data(), v.data(), n, 0.37f);
    REQUIRE(bit_equal(r, v));

    ref.clamp01(a.data(), r.data(), n);
    vec.clamp01(a.data(), v.data(), n);
    REQUIRE(bit_equal(r, v));

    ref.highpass_combine(a.data(), b.data(), r.data(), n);
    vec.highpass_combine(a.data(), b.data(), v.data(), n);
    REQUIRE(bit_equal(r, v));

    ref.highpass_raw(a.data(), b.data(), r.data(), n);
    vec.highpass_raw(a.data(), b.data(), v.data(), n);
    REQUIRE(bit_equal(r, v));

    const auto rgb = random_plane(3 * n, n + 2, 0.0f, 1.0f);
    ref.luma(rgb.data(), r.data(), n);
    vec.luma(rgb.data(), v.data(), n);
    REQUIRE(bit_equal(r, v));
  }
}

TEST_CASE("vector convolutions are bit-identical to scalar", "[simd]") {
  const auto& ref = simd::scalar_kernels();
  const auto& vec = simd::kernels_for(simd::Level::avx2);
  for (double sigma : {0.5, 2.0, 5.3}) {
    const auto taps = gaussian_half_kernel(sigma);
    const int radius = static_cast<int>(taps.size()) - 1;
    for (auto [w, h] : {std::pair{5, 3}, std::pair{37, 11}, std::pair{224, 224}}) {
      const auto src = random_plane(static_cast<std::size_t>(w * h), w * 31 + h, 0.0f, 1.0f);
      std::vector<float> r(src.size()), v(src.size());
      ref.convolve_rows(src.data(), r.data(), w, h, taps.data(), radius);
      vec.convolve_rows(src.data(), v.data(), w, h, taps.data(), radius);
      REQUIRE(bit_equal(r, v));
      ref.convolve_cols(src.data(), r.data(), w, h, taps.data(), radius);
      vec.convolve_cols(src.data(), v.data(), w, h, taps.data(), radius);
      REQUIRE(bit_equal(r, v));
    }
  }
}

TEST_CASE("scalar convolution matches a direct oracle", "[simd]") {
  const auto taps = gaussian_half_kernel(1.5);
  const int radius = static_cast<int>(taps.size()) - 1;
  const int w = 13, h = 4;
  const auto src = random_plane(w * h, 5, 0.0f, 1.0f);
  std::vector<float> out(src.size());
  simd::scalar_kernels().convolve_rows(src.data(), out.data(), w, h, taps.data(), radius);
  auto refl = [](int i, int n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[std::abs(k)] * src[y * w + refl(x + k, w)];
      REQUIRE(out[y * w + x] == Catch::Approx(acc).margin(1e-6));
    }
  }
}
