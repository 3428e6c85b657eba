#pragma once

#include <array>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "texshape/taxonomy/category.hpp"

namespace texshape {

// child synset -> parent synsets (WordNet allows several hypernyms).
struct Hierarchy {
  std::unordered_map<std::string, std::vector<std::string>> parents;

  bool contains(const std::string& synset) const;
};

// Two whitespace-separated columns per line: child parent. '#' starts a
// comment, blank lines are skipped.
Hierarchy parse_hierarchy(std::istream& in);
Hierarchy load_hierarchy(const std::filesystem::path& path);

// 16 lines "category-name synset-id", any order, each category once.
using AnchorTable = std::array<std::string, kCategoryCount>;
AnchorTable parse_anchors(std::istream& in);
AnchorTable load_anchors(const std::filesystem::path& path);

// One synset id per line in class-index order.
std::vector<std::string> load_leaves(const std::filesystem::path& path);

struct ClassMapping {
  std::vector<std::string> leaves;              // class index -> synset
  std::vector<std::optional<Category>> entries;  // class index -> category
  AnchorTable anchors;

  std::size_t size() const noexcept { return entries.size(); }
  // Mapped leaves per category.
  std::array<int, kCategoryCount> counts() const;
  std::optional<Category> category_of(std::string_view synset) const;
};

// Leaf maps to c iff c's anchor is in the leaf's reflexive hypernym closure.
// Errors: missing_data for leaves absent from the hierarchy (and not anchors
// themselves), ambiguous when a leaf sits under two anchors (all offenders
// listed).
ClassMapping build_mapping(const Hierarchy& hierarchy, const AnchorTable& anchors,
                           std::span<const std::string> leaves);

enum class Aggregation { max_leaf, sum_leaves };

struct Decision {
  Category category;
  double score;
};

// max-leaf: category of the most probable mapped leaf.
// sum-leaves: category with the largest summed probability.
// Ties resolve to the lowest category index. Unmapped leaves are ignored;
// throws missing_data if no mapped leaf has positive probability.
Decision decide_16(std::span<const double> probs, const ClassMapping& mapping,
                   Aggregation aggregation = Aggregation::max_leaf);

}  // namespace texshape
