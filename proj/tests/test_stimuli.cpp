#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "texshape/distort/fft.hpp"
#include "texshape/error.hpp"
#include "texshape/imgcore/color.hpp"
#include "texshape/imgcore/png_io.hpp"
#include "texshape/stimuli/generators.hpp"
#include "texshape/stimuli/manifest.hpp"

using namespace texshape;
namespace fs = std::filesystem;

namespace {

bool strictly_binary(const ImageBuffer& img) {
  return std::all_of(img.data().begin(), img.data().end(), [](float v) { return v == 0.0f || v == 1.0f; });
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(fixtures::data_path("corpus"))) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("edges and silhouettes are binary on the corpus", "[stimuli]") {
  const auto files = corpus();
  REQUIRE(files.size() >= 5);
  for (const auto& f : files) {
    INFO(f.filename().string());
    const auto img = load_image(f);
    const auto edges = make_edges(img);
    REQUIRE(edges.channels() == 1);
    REQUIRE(strictly_binary(edges));
    const auto sil = make_silhouette(img);
    REQUIRE(strictly_binary(sil));
    REQUIRE(std::count(sil.data().begin(), sil.data().end(), 0.0f) > 0);
  }
}

TEST_CASE("silhouette keeps the largest component and fills holes", "[stimuli]") {
  SECTION("annulus becomes a filled disc") {
    const auto annulus = fixtures::disc_object(64, 20.0, 8.0);
    const auto sil = make_silhouette(annulus);
    const auto disc = make_silhouette(fixtures::disc_object(64, 20.0));
    REQUIRE(sil == disc);
    REQUIRE(sil.at(32, 32) == 0.0f);
    REQUIRE(sil.at(2, 2) == 1.0f);
  }
  SECTION("small blobs are dropped") {
    auto img = fixtures::disc_object(64, 15.0);
    for (int y = 1; y < 4; ++y)
      for (int x = 1; x < 4; ++x)
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = 0.0f;
    const auto sil = make_silhouette(img);
    REQUIRE(sil.at(2, 2) == 1.0f);
    REQUIRE(sil.at(32, 32) == 0.0f);
  }
  SECTION("blank input is rejected") {
    REQUIRE_THROWS_AS(make_silhouette(ImageBuffer(16, 16, 3, 1.0f)), Error);
  }
  SECTION("override mask wins") {
    fixtures::TempDir dir;
    ImageBuffer mask(64, 64, 1, 1.0f);
    for (int y = 10; y < 20; ++y)
      for (int x = 10; x < 30; ++x) mask.at(x, y) = 0.2f;
    save_png(mask, dir / "mask.png");
    const auto sil = make_silhouette(fixtures::disc_object(64, 20.0), kSilhouetteThreshold, dir / "mask.png");
    REQUIRE(sil.at(15, 15) == 0.0f);
    REQUIRE(sil.at(32, 40) == 1.0f);
  }
}

TEST_CASE("step edge yields one thin line at the step", "[stimuli][edges]") {
  ImageBuffer img(64, 48, 1, 0.2f);
  for (int y = 0; y < 48; ++y)
    for (int x = 32; x < 64; ++x) img.at(x, y) = 0.8f;
  const auto edges = make_edges(img);
  for (int y = 4; y < 44; ++y) {
    int count = 0;
    for (int x = 0; x < 64; ++x) {
      if (edges.at(x, y) == 0.0f) {
        ++count;
        REQUIRE(std::abs(x - 31.5) <= 1.5);
      }
    }
    REQUIRE(count >= 1);
    REQUIRE(count <= 2);
  }
}

TEST_CASE("canny thresholds use the nearest-rank percentile", "[stimuli][edges]") {
  std::vector<float> mags(10);
  for (int i = 0; i < 10; ++i) mags[i] = static_cast<float>(i + 1);
  mags.push_back(0.0f);
  const auto t = canny_thresholds(mags);
  REQUIRE(t.high == 7.0f);  // ceil(0.7 * 10) = 7th smallest nonzero
  REQUIRE(t.low == Catch::Approx(2.8f));
  const auto z = canny_thresholds(std::vector<float>(5, 0.0f));
  REQUIRE(z.high == 0.0f);
  REQUIRE(z.low == 0.0f);
}

TEST_CASE("fill_silhouette pixelwise contract", "[stimuli][fill]") {
  ImageBuffer sil(8, 8, 1, 1.0f);
  for (int y = 2; y < 6; ++y)
    for (int x = 1; x < 7; ++x) sil.at(x, y) = 0.0f;
  sil.at(0, 0) = 0.49f;  // below 0.5 counts as object
  sil.at(7, 7) = 0.5f;   // 0.5 counts as background
  const auto tex = fixtures::noise_rgb(8, 8, 3);
  const auto out = fill_silhouette(sil, tex);
  REQUIRE(out.channels() == 3);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      for (int c = 0; c < 3; ++c) {
        const float expected = sil.at(x, y) < 0.5f ? tex.at(x, y, c) : 1.0f;
        REQUIRE(out.at(x, y, c) == expected);
      }
    }
  }
  REQUIRE_THROWS_AS(fill_silhouette(sil, fixtures::noise_rgb(9, 8, 1)), Error);
}

TEST_CASE("texture bank expands 48 sources into 480 rotations", "[stimuli][bank]") {
  std::vector<ImageBuffer> sources;
  for (int i = 0; i < 48; ++i) sources.push_back(fixtures::noise_rgb(kStimulusSize, kStimulusSize, 100 + i));
  const auto copy = sources;
  const auto bank = build_texture_bank(sources, kTextureBankAngles, true);
  REQUIRE(bank.size() == 480);
  const auto angles = texture_bank_angles();
  REQUIRE(angles.size() == 10);
  for (int k = 0; k < 10; ++k) REQUIRE(angles[k] == Catch::Approx(36.0 * k));
  for (std::size_t i = 0; i < bank.size(); ++i) {
    REQUIRE(bank.entry(i).source_index == i / 10);
    REQUIRE(bank.entry(i).angle_index == static_cast<int>(i % 10));
  }
  for (std::size_t s = 0; s < 48; ++s) REQUIRE(bank.render(s * 10) == copy[s]);
  const auto rotated = bank.render(3 * 10 + 5);
  REQUIRE(rotated.same_shape(copy[3]));
  REQUIRE(rotated.in_unit_range());
  REQUIRE_FALSE(rotated == copy[3]);

  std::vector<ImageBuffer> few(47, ImageBuffer(8, 8, 3));
  REQUIRE_THROWS_AS(build_texture_bank(few, 10, true), Error);
  REQUIRE(build_texture_bank(few, 10, false).size() == 470);
}

TEST_CASE("bank assignment draws without replacement until exhausted", "[stimuli][bank]") {
  RngStream rng(5, "assign");
  const auto picks = assign_bank_textures(160, 480, rng);
  REQUIRE(std::set<std::size_t>(picks.begin(), picks.end()).size() == 160);
  RngStream rng2(5, "assign");
  const auto many = assign_bank_textures(1000, 480, rng2);
  REQUIRE(std::set<std::size_t>(many.begin(), many.begin() + 480).size() == 480);
  REQUIRE(*std::max_element(many.begin(), many.end()) < 480);
}

TEST_CASE("pink noise masks", "[stimuli][mask]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, "pink");
    const auto mask = pink_noise_mask(kStimulusSize, rng);
    const auto [lo, hi] = std::minmax_element(mask.data().begin(), mask.data().end());
    REQUIRE(*lo == 0.0f);
    REQUIRE(*hi == 1.0f);
    const double slope = fixtures::spectral_slope(mask, 5, 50);
    INFO("seed " << seed << " slope " << slope);
    REQUIRE(std::abs(slope + 1.0) <= 0.1);
    RngStream again(seed, "pink");
    REQUIRE(pink_noise_mask(kStimulusSize, again) == mask);
  }
}

TEST_CASE("manifest round trip", "[stimuli][manifest]") {
  std::vector<StimulusRecord> records = fixtures::cue_conflict_records("cc");
  records.resize(10);
  StimulusRecord tex;
  tex.id = "tex1";
  tex.condition = StimulusCondition::texture;
  tex.texture_category = Category::elephant;
  tex.path = "tex1.png";
  tex.seed = 18446744073709551615ULL;
  records.push_back(tex);
  StimulusRecord dist;
  dist.id = "d1";
  dist.condition = StimulusCondition::distortion;
  dist.shape_category = Category::oven;
  dist.distortion = DistortionTag{DistortionKind::eidolon_ii, 16.0};
  dist.seed = 3;
  dist.path = "d1.png";
  records.push_back(dist);

  std::stringstream ss;
  write_manifest(ss, records);
  const auto first = ss.str().substr(0, ss.str().find('\n'));
  REQUIRE(first == R"({"kind":"stimulus-manifest","schema_version":1})");
  REQUIRE(read_manifest(ss) == records);

  fixtures::TempDir dir;
  append_manifest(dir / "m.jsonl", {records[0]});
  append_manifest(dir / "m.jsonl", {records[1], records[2]});
  const auto back = read_manifest(dir / "m.jsonl");
  REQUIRE(back.size() == 3);
  REQUIRE(back[2] == records[2]);
}

TEST_CASE("manifest errors", "[stimuli][manifest]") {
  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_manifest(in);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return Errc::invalid_argument;
  };
  REQUIRE(code_of("") == Errc::parse_error);
  REQUIRE(code_of(R"({"kind":"stimulus-manifest","schema_version":2})") == Errc::schema_mismatch);
  REQUIRE(code_of("{\"kind\":\"stimulus-manifest\",\"schema_version\":1}\n{\"id\":\"a\"}") == Errc::parse_error);
  REQUIRE(code_of("{\"kind\":\"stimulus-manifest\",\"schema_version\":1}\n"
                  "{\"id\":\"a\",\"condition\":\"texture\",\"shape_category\":\"cat\",\"path\":\"a.png\"}") ==
          Errc::parse_error);
}

TEST_CASE("condition names and category stems", "[stimuli]") {
  for (auto c : {StimulusCondition::original, StimulusCondition::greyscale, StimulusCondition::silhouette,
                 StimulusCondition::edges, StimulusCondition::texture,
                 StimulusCondition::cue_conflict_style_transfer,
                 StimulusCondition::cue_conflict_filled_silhouette, StimulusCondition::distortion}) {
    REQUIRE(parse_condition(to_string(c)) == c);
  }
  REQUIRE(is_cue_conflict(StimulusCondition::cue_conflict_filled_silhouette));
  REQUIRE_FALSE(is_cue_conflict(StimulusCondition::texture));
  REQUIRE(category_from_stem("elephant2") == Category::elephant);
  REQUIRE(category_from_stem("cat10") == Category::cat);
  REQUIRE_THROWS_AS(category_from_stem("zebra1"), Error);
}

TEST_CASE("style-transfer import", "[stimuli]") {
  fixtures::TempDir dir;
  ImageBuffer img(4, 4, 3, 0.5f);
  save_png(img, dir / "cat7_elephant2.png");
  save_png(img, dir / "bear1_bear3.png");
  const auto records = import_style_transfer(dir.path());
  REQUIRE(records.size() == 2);
  REQUIRE(records[0].id == "bear1_bear3");
  REQUIRE(records[1].shape_category == Category::cat);
  REQUIRE(records[1].texture_category == Category::elephant);
  REQUIRE(records[1].condition == StimulusCondition::cue_conflict_style_transfer);
}
