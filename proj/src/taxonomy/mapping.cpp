#include "texshape/taxonomy/mapping.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "texshape/error.hpp"

namespace texshape {

namespace {

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::not_found, "cannot open " + path.string());
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace

bool Hierarchy::contains(const std::string& synset) const {
  return parents.find(synset) != parents.end();
}

Hierarchy parse_hierarchy(std::istream& in) {
  Hierarchy h;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::string child;
    std::string parent;
    std::string extra;
    if (!(fields >> child)) continue;
    if (!(fields >> parent) || (fields >> extra)) {
      throw Error(Errc::parse_error,
                  "hierarchy line " + std::to_string(lineno) + ": expected 'child parent'");
    }
    h.parents[child].push_back(parent);
    h.parents.try_emplace(parent);
  }
  return h;
}

Hierarchy load_hierarchy(const std::filesystem::path& path) {
  auto in = open_text(path);
  return parse_hierarchy(in);
}

AnchorTable parse_anchors(std::istream& in) {
  AnchorTable anchors;
  std::array<bool, kCategoryCount> seen{};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::string name;
    std::string synset;
    if (!(fields >> name)) continue;
    if (!(fields >> synset)) {
      throw Error(Errc::parse_error, "anchors line " + std::to_string(lineno) +
                                         ": expected 'category synset'");
    }
    const auto cat = parse_category(name);
    if (!cat) {
      throw Error(Errc::parse_error,
                  "anchors line " + std::to_string(lineno) + ": unknown category " + name);
    }
    if (seen[index_of(*cat)]) {
      throw Error(Errc::parse_error, "anchors: duplicate category " + name);
    }
    seen[index_of(*cat)] = true;
    anchors[index_of(*cat)] = synset;
  }
  for (int i = 0; i < kCategoryCount; ++i) {
    if (!seen[i]) {
      throw Error(Errc::missing_data,
                  "anchors: no synset for " + std::string(kCategoryNames[i]));
    }
  }
  return anchors;
}

AnchorTable load_anchors(const std::filesystem::path& path) {
  auto in = open_text(path);
  return parse_anchors(in);
}

std::vector<std::string> load_leaves(const std::filesystem::path& path) {
  auto in = open_text(path);
  std::vector<std::string> leaves;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(strip_comment(line));
    std::string id;
    if (fields >> id) leaves.push_back(id);
  }
  return leaves;
}

std::array<int, kCategoryCount> ClassMapping::counts() const {
  std::array<int, kCategoryCount> out{};
  for (const auto& e : entries) {
    if (e) ++out[index_of(*e)];
  }
  return out;
}

std::optional<Category> ClassMapping::category_of(std::string_view synset) const {
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] == synset) return entries[i];
  }
  return std::nullopt;
}

ClassMapping build_mapping(const Hierarchy& hierarchy, const AnchorTable& anchors,
                           std::span<const std::string> leaves) {
  std::unordered_map<std::string, Category> anchor_of;
  for (int i = 0; i < kCategoryCount; ++i) {
    if (!anchor_of.emplace(anchors[i], category_at(i)).second) {
      throw Error(Errc::ambiguous, "anchor synset " + anchors[i] + " used by two categories");
    }
  }

  ClassMapping mapping;
  mapping.anchors = anchors;
  mapping.leaves.assign(leaves.begin(), leaves.end());
  mapping.entries.resize(leaves.size());

  std::vector<std::string> missing;
  std::vector<std::string> ambiguous;
  for (std::size_t idx = 0; idx < leaves.size(); ++idx) {
    const std::string& leaf = leaves[idx];
    if (!hierarchy.contains(leaf) && anchor_of.find(leaf) == anchor_of.end()) {
      missing.push_back(leaf);
      continue;
    }
    // Reflexive closure by DFS over (possibly multiple) parents.
    std::unordered_set<std::string> visited;
    std::vector<const std::string*> stack{&leaf};
    std::optional<Category> found;
    bool conflict = false;
    while (!stack.empty()) {
      const std::string* node = stack.back();
      stack.pop_back();
      if (!visited.insert(*node).second) continue;
      if (auto a = anchor_of.find(*node); a != anchor_of.end()) {
        if (found && *found != a->second) conflict = true;
        found = a->second;
      }
      if (auto p = hierarchy.parents.find(*node); p != hierarchy.parents.end()) {
        for (const auto& parent : p->second) stack.push_back(&parent);
      }
    }
    if (conflict) {
      ambiguous.push_back(leaf);
      continue;
    }
    mapping.entries[idx] = found;
  }

  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& id : ids) {
      if (!s.empty()) s += ", ";
      s += id;
    }
    return s;
  };
  if (!ambiguous.empty()) {
    throw Error(Errc::ambiguous, "leaves under two anchors: " + join(ambiguous));
  }
  if (!missing.empty()) {
    throw Error(Errc::missing_data, "leaves missing from hierarchy: " + join(missing));
  }
  return mapping;
}

Decision decide_16(std::span<const double> probs, const ClassMapping& mapping,
                   Aggregation aggregation) {
  if (probs.size() != mapping.size()) {
    throw Error(Errc::invalid_argument,
                "probability vector has " + std::to_string(probs.size()) + " entries, mapping has " +
                    std::to_string(mapping.size()));
  }
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(Errc::invalid_argument, "probabilities must be nonnegative");
  }

  std::array<double, kCategoryCount> agg{};
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto& cat = mapping.entries[i];
    if (!cat) continue;
    double& slot = agg[index_of(*cat)];
    if (aggregation == Aggregation::sum_leaves) {
      slot += probs[i];
    } else if (probs[i] > slot) {
      slot = probs[i];
    }
  }
  // Strict '>' keeps the lowest index on ties.
  int best = 0;
  for (int c = 1; c < kCategoryCount; ++c) {
    if (agg[c] > agg[best]) best = c;
  }
  if (!(agg[best] > 0.0)) {
    throw Error(Errc::missing_data, "no probability mass on mapped leaves");
  }
  return {category_at(best), agg[best]};
}

}  // namespace texshape
