#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/png_io.hpp"
#include "texshape/imgcore/resample.hpp"
#include "texshape/imgcore/rng.hpp"

using namespace texshape;

TEST_CASE("png round trip is exact on 8-bit values", "[imgcore][png]") {
  fixtures::TempDir dir;
  ImageBuffer img(17, 9, 3);
  for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = static_cast<float>(i % 256) / 255.0f;
  save_png(img, dir / "rgb.png");
  const auto back = load_image(dir / "rgb.png");
  REQUIRE(back.same_shape(img));
  for (std::size_t i = 0; i < img.size(); ++i) REQUIRE(back.data()[i] == img.data()[i]);

  ImageBuffer grey(5, 4, 1, 0.5f);
  save_png(grey, dir / "g.png");
  const auto g = load_image(dir / "g.png");
  REQUIRE(g.channels() == 1);
  REQUIRE(g.at(2, 2) == 128.0f / 255.0f);
}

TEST_CASE("png errors map to codes", "[imgcore][png]") {
  fixtures::TempDir dir;
  try {
    load_image(dir / "missing.png");
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::not_found);
  }
  {
    std::ofstream out(dir / "junk.png", std::ios::binary);
    out << "not a png at all";
  }
  REQUIRE_THROWS_AS(load_image(dir / "junk.png"), Error);
}

TEST_CASE("quantize clamps and rounds", "[imgcore]") {
  REQUIRE(quantize_byte(-0.2f) == 0);
  REQUIRE(quantize_byte(1.7f) == 255);
  REQUIRE(quantize_byte(1.0f) == 255);
  REQUIRE(quantize_byte(0.5f) == 128);
}

TEST_CASE("greyscale conversion", "[imgcore][color]") {
  SECTION("grey pixels map to themselves") {
    ImageBuffer img(3, 1, 3);
    const float values[] = {0.0f, 0.37f, 1.0f};
    for (int x = 0; x < 3; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, 0, c) = values[x];
    const auto g = to_greyscale(img);
    for (int x = 0; x < 3; ++x) REQUIRE(g.at(x, 0) == values[x]);
  }
  SECTION("luma weights") {
    ImageBuffer img(1, 1, 3);
    img.at(0, 0, 0) = 1.0f;
    REQUIRE(to_greyscale(img).at(0, 0) == Catch::Approx(kLumaR).margin(1e-7));
  }
  SECTION("idempotent") {
    const auto g = to_greyscale(fixtures::noise_rgb(8, 8, 3));
    REQUIRE(to_greyscale(g) == g);
    const auto stacked = stack_channels(g);
    REQUIRE(stacked.channels() == 3);
    REQUIRE(to_greyscale(stacked) == g);
  }
}

TEST_CASE("reflect index mirrors with edge repeat", "[imgcore]") {
  REQUIRE(reflect_index(-1, 5) == 0);
  REQUIRE(reflect_index(-2, 5) == 1);
  REQUIRE(reflect_index(5, 5) == 4);
  REQUIRE(reflect_index(6, 5) == 3);
  REQUIRE(reflect_index(12, 5) == 2);
  REQUIRE(reflect_index(-13, 5) == 2);
  REQUIRE(reflect_index(7, 1) == 0);
  for (int i = -50; i < 50; ++i) {
    const int r = reflect_index(i, 7);
    REQUIRE(r >= 0);
    REQUIRE(r < 7);
  }
}

TEST_CASE("rotation by multiples of 90 degrees is exact", "[imgcore][resample]") {
  const auto img = fixtures::noise_grey(9, 9, 11);
  REQUIRE(rotate(img, 0.0) == img);
  const auto r360 = rotate(img, 360.0);
  REQUIRE(r360 == img);
  const auto r90 = rotate(rotate(rotate(rotate(img, 90.0), 90.0), 90.0), 90.0);
  REQUIRE(r90 == img);
  REQUIRE(rotate(img, 180.0).at(0, 0) == img.at(8, 8));
}

TEST_CASE("rng streams are deterministic and keyed", "[imgcore][rng]") {
  RngStream a(42, "x");
  RngStream b(42, "x");
  RngStream c(42, "y");
  RngStream d(43, "x");
  bool differs_c = false;
  bool differs_d = false;
  for (int i = 0; i < 32; ++i) {
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
    differs_c |= va != c.next_u64();
    differs_d |= va != d.next_u64();
  }
  REQUIRE(differs_c);
  REQUIRE(differs_d);

  RngStream u(7, "uniform");
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = u.uniform();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  REQUIRE(sum / n == Catch::Approx(0.5).margin(0.005));

  RngStream k(7, "below");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto v = k.below(6);
    REQUIRE(v < 6);
    seen.insert(v);
  }
  REQUIRE(seen.size() == 6);
}

TEST_CASE("fnv1a matches published vectors", "[imgcore][rng]") {
  REQUIRE(fnv1a64("") == 0xcbf29ce484222325ULL);
  REQUIRE(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  REQUIRE(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("child streams do not advance the parent", "[imgcore][rng]") {
  RngStream a(1, "p");
  RngStream b(1, "p");
  auto ch = a.child("c");
  (void)ch.next_u64();
  REQUIRE(a.next_u64() == b.next_u64());
  RngStream direct(1, "p/c");
  REQUIRE(a.child("c").next_u64() == direct.next_u64());
}

TEST_CASE("rms difference", "[imgcore]") {
  ImageBuffer a(2, 2, 1, 0.0f);
  ImageBuffer b(2, 2, 1, 0.5f);
  REQUIRE(rms_difference(a, b) == Catch::Approx(0.5));
  REQUIRE_THROWS_AS(rms_difference(a, ImageBuffer(3, 2, 1)), Error);
  REQUIRE_THROWS_AS(require_grey(ImageBuffer(2, 2, 3), "x"), Error);
}
