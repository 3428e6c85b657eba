#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "texshape/distort/distortions.hpp"
#include "texshape/distort/fft.hpp"
#include "texshape/distort/gaussian.hpp"
#include "texshape/distort/spec.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/png_io.hpp"

using namespace texshape;

namespace {

std::vector<double> as_double(const ImageBuffer& img) {
  return {img.data().begin(), img.data().end()};
}

double max_abs_diff(const ImageBuffer& a, const ImageBuffer& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(static_cast<double>(a.data()[i]) - b.data()[i]));
  }
  return m;
}

// 1-D earth mover's distance between two equal-size samples.
double emd(const ImageBuffer& a, const ImageBuffer& b) {
  auto x = as_double(a);
  auto y = as_double(b);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
  return acc / static_cast<double>(x.size());
}

ImageBuffer natural_grey() { return to_greyscale(load_image(fixtures::data_path("corpus/chelsea.png"))); }

}  // namespace

TEST_CASE("fft agrees with a naive transform", "[distort][fft]") {
  for (auto [w, h] : {std::pair{8, 8}, std::pair{7, 5}, std::pair{12, 9}}) {
    const auto img = fixtures::noise_grey(w, h, static_cast<std::uint64_t>(w * h));
    const auto values = as_double(img);
    const auto grid = fft::forward(values, w, h);
    const auto naive = fixtures::naive_dft(values, w, h);
    for (std::size_t i = 0; i < naive.size(); ++i) {
      REQUIRE(std::abs(grid.values[i] - naive[i]) < 1e-9);
    }
    const auto back = fft::inverse_real(grid);
    for (std::size_t i = 0; i < values.size(); ++i) REQUIRE(back[i] == Catch::Approx(values[i]).margin(1e-12));
  }
}

TEST_CASE("conjugate index and signed frequency", "[distort][fft]") {
  REQUIRE(fft::conjugate_index(0, 0, 8, 6) == 0);
  REQUIRE(fft::conjugate_index(1, 0, 8, 6) == 7);
  REQUIRE(fft::conjugate_index(3, 2, 8, 6) == 4 * 8 + 5);
  REQUIRE(fft::signed_frequency(4, 8) == 4);
  REQUIRE(fft::signed_frequency(5, 8) == -3);
}

TEST_CASE("zero severity is the identity for every kind", "[distort]") {
  const auto img = natural_grey();
  for (auto kind : kAllDistortionKinds) {
    const double level = default_levels(kind).front();
    if (kind == DistortionKind::high_pass) continue;  // no identity level
    INFO(to_string(kind) << " level " << level);
    const auto out = apply_distortion(img, {kind, level, 7}, "identity");
    REQUIRE(out.same_shape(img));
    REQUIRE(max_abs_diff(out, img) <= 1e-6);
  }
}

TEST_CASE("uniform noise", "[distort][noise]") {
  SECTION("empirical mean of a mid-grey image is preserved") {
    ImageBuffer img(1000, 1000, 1, 0.5f);
    RngStream rng(3, "uniform");
    const auto out = apply_uniform_noise(img, 0.1, rng);
    double sum = 0.0;
    for (float v : out.data()) {
      REQUIRE(v >= 0.4f - 1e-6f);
      REQUIRE(v <= 0.6f + 1e-6f);
      sum += v;
    }
    REQUIRE(std::abs(sum / 1e6 - 0.5) < 1e-3);
  }
  SECTION("black pixels only move up") {
    ImageBuffer img(64, 64, 1, 0.0f);
    RngStream rng(4, "uniform");
    const auto out = apply_uniform_noise(img, 0.2, rng);
    for (float v : out.data()) {
      REQUIRE(v >= 0.0f);
      REQUIRE(v <= 0.2f + 1e-6f);
    }
  }
  SECTION("width above one is rejected") {
    RngStream rng(1, "u");
    REQUIRE_THROWS_AS(apply_uniform_noise(ImageBuffer(2, 2, 1), 1.5, rng), Error);
  }
}

TEST_CASE("contrast", "[distort]") {
  ImageBuffer img(2, 1, 1);
  img.at(0, 0) = 0.9f;
  img.at(1, 0) = 0.1f;
  const auto half = apply_contrast(img, 0.5);
  REQUIRE(half.at(0, 0) == Catch::Approx(0.7).margin(1e-6));
  REQUIRE(half.at(1, 0) == Catch::Approx(0.3).margin(1e-6));
  const auto flat = apply_contrast(img, 0.0);
  REQUIRE(flat.at(0, 0) == 0.5f);
  REQUIRE_THROWS_AS(apply_contrast(img, 1.2), Error);
}

TEST_CASE("low-pass", "[distort][blur]") {
  SECTION("constants are preserved") {
    ImageBuffer img(31, 17, 1, 0.3f);
    const auto out = apply_lowpass(img, 3.0);
    for (float v : out.data()) REQUIRE(v == Catch::Approx(0.3).margin(1e-6));
  }
  SECTION("impulse response matches the kernel-sum oracle") {
    const int n = 41;
    ImageBuffer img(n, n, 1, 0.0f);
    img.at(n / 2, n / 2) = 1.0f;
    const double sigma = 2.0;
    const auto out = apply_lowpass(img, sigma);
    const int radius = static_cast<int>(std::ceil(4 * sigma));
    double norm = 0.0;
    for (int k = -radius; k <= radius; ++k) norm += std::exp(-k * k / (2 * sigma * sigma));
    const double expected = 1.0 / (norm * norm);
    REQUIRE(out.at(n / 2, n / 2) == Catch::Approx(expected).margin(1e-6));
    REQUIRE(out.at(n / 2 + 3, n / 2 + 1) ==
            Catch::Approx(std::exp(-(9 + 1) / (2 * sigma * sigma)) / (norm * norm)).margin(1e-6));
  }
  SECTION("negative sigma is rejected") {
    REQUIRE_THROWS_AS(apply_lowpass(ImageBuffer(2, 2, 1), -1.0), Error);
  }
  SECTION("kernel taps are normalised") {
    for (double s : {0.4, 1.0, 7.5}) {
      const auto taps = gaussian_half_kernel(s);
      REQUIRE(static_cast<int>(taps.size()) == static_cast<int>(std::ceil(4 * s)) + 1);
      double sum = taps[0];
      for (std::size_t k = 1; k < taps.size(); ++k) sum += 2 * taps[k];
      REQUIRE(sum == Catch::Approx(1.0).margin(1e-6));
    }
  }
}

TEST_CASE("high-pass", "[distort][blur]") {
  SECTION("constant image gives uniform mid-grey") {
    const auto out = apply_highpass(ImageBuffer(20, 20, 1, 0.8f), 2.0);
    for (float v : out.data()) REQUIRE(v == Catch::Approx(0.5).margin(1e-6));
  }
  SECTION("large sigma approaches in - mean + 0.5") {
    ImageBuffer img(64, 64, 1, 0.4f);
    for (int y = 0; y < 64; ++y)
      for (int x = 32; x < 64; ++x) img.at(x, y) = 0.6f;
    const auto out = highpass_unclipped(img, 64.0);
    const double mean = 0.5;
    // Mirror borders make the infinite-sigma blur the global mean.
    for (int y = 0; y < 64; y += 9) {
      for (int x = 0; x < 64; x += 7) {
        REQUIRE(out.at(x, y) == Catch::Approx(img.at(x, y) - mean + 0.5).margin(1e-2));
      }
    }
  }
  SECTION("zero sigma is rejected") {
    REQUIRE_THROWS_AS(apply_highpass(ImageBuffer(2, 2, 1), 0.0), Error);
  }
}

TEST_CASE("phase noise preserves the amplitude spectrum", "[distort][phase]") {
  const auto img = to_greyscale(fixtures::noise_rgb(48, 40, 9));
  const auto values = as_double(img);
  const auto in = fft::forward(values, img.width(), img.height());
  for (double width : {30.0, 90.0, 180.0}) {
    RngStream rng(5, "phase");
    const auto pre = phase_noise_unclipped(img, width, rng);
    const auto out = fft::forward(pre, img.width(), img.height());
    double worst = 0.0;
    for (std::size_t i = 0; i < in.values.size(); ++i) {
      worst = std::max(worst, std::abs(std::abs(in.values[i]) - std::abs(out.values[i])));
    }
    REQUIRE(worst <= 1e-6);
    REQUIRE(std::abs(out.values[0] - in.values[0]) <= 1e-6);  // DC untouched
  }
  SECTION("constant image is unchanged") {
    ImageBuffer flat(16, 16, 1, 0.25f);
    RngStream rng(2, "phase");
    const auto out = apply_phase_noise(flat, 180.0, rng);
    REQUIRE(max_abs_diff(out, flat) <= 1e-6);
  }
  SECTION("width outside [0, 180] is rejected") {
    RngStream rng(2, "phase");
    REQUIRE_THROWS_AS(apply_phase_noise(img, 181.0, rng), Error);
  }
}

TEST_CASE("eidolon approximation invariants", "[distort][eidolon]") {
  const auto img = natural_grey();
  SECTION("constant image stays constant") {
    ImageBuffer flat(32, 32, 1, 0.6f);
    RngStream rng(1, "e");
    const auto out = apply_eidolon(flat, {16.0, 0.3, 10.0}, rng);
    REQUIRE(max_abs_diff(out, flat) <= 1e-6);
  }
  SECTION("histogram is nearly preserved at reach 4") {
    for (auto kind : {DistortionKind::eidolon_i, DistortionKind::eidolon_ii, DistortionKind::eidolon_iii}) {
      const auto out = apply_distortion(img, {kind, 4.0, 11}, "hist");
      INFO(to_string(kind) << " emd " << emd(out, img));
      REQUIRE(emd(out, img) < 0.02);
    }
  }
  SECTION("coherence presets") {
    REQUIRE(eidolon_coherence(DistortionKind::eidolon_i) == 1.0);
    REQUIRE(eidolon_coherence(DistortionKind::eidolon_ii) == 0.3);
    REQUIRE(eidolon_coherence(DistortionKind::eidolon_iii) == 0.0);
  }
  SECTION("bad parameters") {
    RngStream rng(1, "e");
    REQUIRE_THROWS_AS(apply_eidolon(img, {-1.0, 1.0, 10.0}, rng), Error);
    REQUIRE_THROWS_AS(apply_eidolon(img, {1.0, 1.5, 10.0}, rng), Error);
    REQUIRE_THROWS_AS(apply_eidolon(img, {1.0, 1.0, 0.0}, rng), Error);
  }
}

TEST_CASE("degradation is monotone over the default grids", "[distort]") {
  const auto img = natural_grey();
  for (auto kind : kAllDistortionKinds) {
    const auto levels = default_levels(kind);
    double prev = -1.0;
    for (double level : levels) {
      const auto out = apply_distortion(img, {kind, level, 21}, "monotone");
      const double rms = rms_difference(out, img);
      INFO(to_string(kind) << " level " << level << " rms " << rms << " prev " << prev);
      REQUIRE(rms >= prev);
      prev = rms;
    }
  }
}

TEST_CASE("specs are validated and deterministic", "[distort]") {
  const auto img = fixtures::noise_rgb(24, 24, 1);
  REQUIRE_THROWS_AS(apply_distortion(img, {DistortionKind::uniform_noise, 0.1, std::nullopt}, "s"), Error);
  REQUIRE_THROWS_AS(apply_distortion(img, {DistortionKind::contrast, 1.5, std::nullopt}, "s"), Error);
  REQUIRE_THROWS_AS(apply_distortion(img, {DistortionKind::high_pass, 0.0, std::nullopt}, "s"), Error);
  REQUIRE(apply_distortion(img, {DistortionKind::contrast, 0.5, std::nullopt}, "s").channels() == 1);

  for (auto kind : kAllDistortionKinds) {
    if (!is_stochastic(kind)) continue;
    const double level = default_levels(kind)[2];
    const auto a = apply_distortion(img, {kind, level, 99}, "stim-1");
    const auto b = apply_distortion(img, {kind, level, 99}, "stim-1");
    const auto c = apply_distortion(img, {kind, level, 99}, "stim-2");
    REQUIRE(a == b);
    REQUIRE_FALSE(a == c);
  }
  for (auto kind : kAllDistortionKinds) {
    REQUIRE(parse_distortion_kind(to_string(kind)) == kind);
  }
  REQUIRE_FALSE(parse_distortion_kind("eidolon-IV").has_value());
}
