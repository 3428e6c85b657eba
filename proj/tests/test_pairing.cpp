#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "texshape/error.hpp"
#include "texshape/stimuli/pairing.hpp"

using namespace texshape;

namespace {

std::vector<CategorizedImage> pool(const std::string& tag, int per_category) {
  std::vector<CategorizedImage> out;
  for (int c = 0; c < kCategoryCount; ++c) {
    for (int i = 0; i < per_category; ++i) {
      const auto id = std::string(kCategoryNames[c]) + std::to_string(i) + tag;
      out.push_back({id, id + ".png", category_at(c)});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("pairing manifest structure over seeds", "[pairing]") {
  const auto content = pool("", 10);
  const auto textures = pool("t", 3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RngStream rng(seed, "pairings");
    const auto m = sample_cue_conflict_pairs(content, textures, rng);
    REQUIRE(m.entries.size() == 1280);
    std::map<Category, int> per_shape;
    std::map<std::pair<Category, Category>, int> per_pair;
    std::map<std::pair<Category, Category>, std::set<int>> replicates;
    int no_conflict = 0;
    for (const auto& e : m.entries) {
      ++per_shape[e.shape];
      ++per_pair[{e.shape, e.texture}];
      replicates[{e.shape, e.texture}].insert(e.replicate);
      if (e.shape == e.texture) ++no_conflict;
    }
    for (int c = 0; c < kCategoryCount; ++c) REQUIRE(per_shape[category_at(c)] == 80);
    REQUIRE(per_pair.size() == 256);
    for (const auto& [pair, n] : per_pair) {
      REQUIRE(n == 5);
      REQUIRE(replicates[pair] == std::set<int>{1, 2, 3, 4, 5});
    }
    REQUIRE(no_conflict == 80);
    REQUIRE(count_no_conflict(m) == 80);
  }
}

TEST_CASE("pairing draws match their categories", "[pairing]") {
  const auto content = pool("", 10);
  const auto textures = pool("t", 3);
  std::map<std::string, Category> cat_of;
  for (const auto& c : content) cat_of[c.id] = c.category;
  for (const auto& t : textures) cat_of[t.id] = t.category;
  RngStream rng(3, "pairings");
  const auto m = sample_cue_conflict_pairs(content, textures, rng);
  for (const auto& e : m.entries) {
    REQUIRE(cat_of.at(e.content_image) == e.shape);
    REQUIRE(cat_of.at(e.texture_image) == e.texture);
  }
  // Five draws from a pool of three textures: every texture appears at least once.
  std::map<std::pair<Category, Category>, std::set<std::string>> seen;
  for (const auto& e : m.entries) seen[{e.shape, e.texture}].insert(e.texture_image);
  for (const auto& [pair, ids] : seen) REQUIRE(ids.size() == 3);
}

TEST_CASE("pairing is deterministic under seed", "[pairing]") {
  const auto content = pool("", 10);
  const auto textures = pool("t", 3);
  RngStream a(9, "pairings"), b(9, "pairings"), c(10, "pairings");
  const auto ma = sample_cue_conflict_pairs(content, textures, a);
  REQUIRE(ma == sample_cue_conflict_pairs(content, textures, b));
  REQUIRE_FALSE(ma == sample_cue_conflict_pairs(content, textures, c));
}

TEST_CASE("empty category pool is missing data", "[pairing]") {
  auto content = pool("", 2);
  std::erase_if(content, [](const CategorizedImage& i) { return i.category == Category::knife; });
  RngStream rng(1, "pairings");
  try {
    sample_cue_conflict_pairs(content, pool("t", 1), rng);
    FAIL("expected missing_data");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::missing_data);
  }
}

TEST_CASE("pairing files and records", "[pairing]") {
  fixtures::TempDir dir;
  RngStream rng(4, "pairings");
  const auto m = sample_cue_conflict_pairs(pool("", 10), pool("t", 3), rng);
  write_pairings(dir / "pairs.jsonl", m);
  REQUIRE(read_pairings(dir / "pairs.jsonl") == m);
  const auto records = pairing_to_records(m, dir.path());
  REQUIRE(records.size() == 1280);
  std::set<std::string> ids;
  for (const auto& r : records) {
    ids.insert(r.id);
    REQUIRE(r.condition == StimulusCondition::cue_conflict_style_transfer);
  }
  REQUIRE(ids.size() == 1280);
  REQUIRE(records[0].shape_category == m.entries[0].shape);
  REQUIRE(records[0].texture_category == m.entries[0].texture);
}
