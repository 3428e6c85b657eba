#include <catch_amalgamated.hpp>

#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "texshape/error.hpp"
#include "texshape/taxonomy/mapping.hpp"

using namespace texshape;

namespace {

struct Fixture {
  Hierarchy hierarchy;
  AnchorTable anchors;
  std::vector<std::string> leaves;
  ClassMapping mapping;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    x.hierarchy = load_hierarchy(fixtures::data_path("taxonomy/hierarchy.tsv"));
    x.anchors = load_anchors(fixtures::data_path("taxonomy/anchors.tsv"));
    x.leaves = load_leaves(fixtures::data_path("taxonomy/leaves.txt"));
    x.mapping = build_mapping(x.hierarchy, x.anchors, x.leaves);
    return x;
  }();
  return f;
}

std::vector<double> random_probs(std::mt19937_64& gen, std::size_t n) {
  std::gamma_distribution<double> g(0.3, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) sum += v = g(gen);
  for (auto& v : p) v /= sum;
  return p;
}

}  // namespace

TEST_CASE("well-known leaves map as expected", "[taxonomy]") {
  const auto& m = fixture().mapping;
  REQUIRE(m.size() == 1000);
  REQUIRE(m.category_of("n02123045") == Category::cat);      // tabby
  REQUIRE(m.category_of("n02123597") == Category::cat);      // Siamese
  REQUIRE_FALSE(m.category_of("n02129604").has_value());     // tiger: feline, not cat
  REQUIRE(m.category_of("n02690373") == Category::airplane);  // airliner
  REQUIRE(m.category_of("n03345487") == Category::truck);     // fire engine
}

TEST_CASE("mapping agrees with an independent closure", "[taxonomy]") {
  const auto& m = fixture().mapping;
  const auto oracle = fixtures::taxonomy_closure_oracle();
  REQUIRE(oracle.size() == m.size());
  std::array<int, kCategoryCount> counts{};
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const int got = m.entries[i] ? index_of(*m.entries[i]) : -1;
    REQUIRE(got == oracle[i]);
    if (oracle[i] >= 0) ++counts[oracle[i]];
  }
  REQUIRE(m.counts() == counts);

  std::ifstream in(fixtures::data_path("taxonomy/category_counts.tsv"));
  std::string name;
  int n = 0;
  while (in >> name >> n) REQUIRE(counts[index_of(*parse_category(name))] == n);
}

TEST_CASE("ambiguous and unknown leaves are reported", "[taxonomy]") {
  std::istringstream edges("a x\nx anchor_cat\na y\ny anchor_dog\nb anchor_dog\n");
  const auto h = parse_hierarchy(edges);
  AnchorTable anchors;
  for (int c = 0; c < kCategoryCount; ++c) anchors[c] = "anchor_" + std::string(kCategoryNames[c]);
  std::vector<std::string> leaves{"a", "b"};
  try {
    build_mapping(h, anchors, leaves);
    FAIL("expected ambiguous");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::ambiguous);
    REQUIRE(std::string(e.what()).find("a") != std::string::npos);
  }
  std::vector<std::string> unknown{"b", "zzz"};
  try {
    build_mapping(h, anchors, unknown);
    FAIL("expected missing_data");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::missing_data);
  }
  std::vector<std::string> ok{"b", "anchor_cat"};
  const auto m = build_mapping(h, anchors, ok);
  REQUIRE(m.entries[0] == Category::dog);
  REQUIRE(m.entries[1] == Category::cat);
}

TEST_CASE("anchor tables need every category once", "[taxonomy]") {
  std::istringstream short_table("cat n1\ndog n2\n");
  REQUIRE_THROWS_AS(parse_anchors(short_table), Error);
  std::string text;
  for (int c = 0; c < kCategoryCount; ++c) text += std::string(kCategoryNames[c]) + " n" + std::to_string(c) + "\n";
  std::istringstream full(text);
  REQUIRE(parse_anchors(full)[index_of(Category::truck)] == "n15");
  std::istringstream dup(text + "cat n99\n");
  REQUIRE_THROWS_AS(parse_anchors(dup), Error);
}

TEST_CASE("decide_16 is invariant to positive rescaling", "[taxonomy][property]") {
  const auto& m = fixture().mapping;
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_probs(gen, m.size());
    const double k = scale(gen);
    std::vector<double> q(p);
    for (auto& v : q) v *= k;
    for (auto agg : {Aggregation::max_leaf, Aggregation::sum_leaves}) {
      const auto a = decide_16(p, m, agg);
      const auto b = decide_16(q, m, agg);
      REQUIRE(a.category == b.category);
      REQUIRE(b.score == Catch::Approx(a.score * k).epsilon(1e-9));
    }
  }
}

TEST_CASE("sum-leaves equals brute-force summation", "[taxonomy]") {
  const auto& m = fixture().mapping;
  const auto oracle = fixtures::taxonomy_closure_oracle();
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_probs(gen, m.size());
    std::array<double, kCategoryCount> sums{};
    int best_leaf = -1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (oracle[i] < 0) continue;
      sums[oracle[i]] += p[i];
      if (best_leaf < 0 || p[i] > p[best_leaf]) best_leaf = static_cast<int>(i);
    }
    int best = 0;
    for (int c = 1; c < kCategoryCount; ++c) if (sums[c] > sums[best]) best = c;
    const auto d = decide_16(p, m, Aggregation::sum_leaves);
    REQUIRE(index_of(d.category) == best);
    REQUIRE(d.score == Catch::Approx(sums[best]).epsilon(1e-12));
    const auto mx = decide_16(p, m, Aggregation::max_leaf);
    REQUIRE(index_of(mx.category) == oracle[best_leaf]);
    REQUIRE(mx.score == p[best_leaf]);
  }
}

TEST_CASE("decide_16 edge cases", "[taxonomy]") {
  const auto& m = fixture().mapping;
  std::vector<double> zeros(m.size(), 0.0);
  try {
    decide_16(zeros, m);
    FAIL("expected missing_data");
  } catch (const Error& e) {
    REQUIRE(e.code() == Errc::missing_data);
  }
  REQUIRE_THROWS_AS(decide_16(std::vector<double>(10, 0.1), m), Error);
  // Equal mass on a dog and a cat leaf: lowest index (cat) wins.
  std::vector<double> tie(m.size(), 0.0);
  const auto leaf_of = [&](Category c) {
    for (std::size_t i = 0; i < m.size(); ++i) if (m.entries[i] == c) return i;
    return std::size_t{0};
  };
  tie[leaf_of(Category::dog)] = 0.5;
  tie[leaf_of(Category::cat)] = 0.5;
  REQUIRE(decide_16(tie, m).category == Category::cat);
  REQUIRE(decide_16(tie, m, Aggregation::sum_leaves).category == Category::cat);
}
