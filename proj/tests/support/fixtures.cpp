#include "fixtures.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "texshape/distort/fft.hpp"

namespace fixtures {

namespace fs = std::filesystem;
using texshape::Category;
using texshape::ImageBuffer;
using texshape::StimulusCondition;
using texshape::StimulusRecord;

TempDir::TempDir() {
  auto templ = (fs::temp_directory_path() / "texshape-test-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path data_path(const std::string& relative) { return fs::path(TEXSHAPE_DATA_DIR) / relative; }

ImageBuffer gradient_rgb(int w, int h) {
  ImageBuffer img(w, h, 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<float>(x) / static_cast<float>(w - 1);
      img.at(x, y, 1) = static_cast<float>(y) / static_cast<float>(h - 1);
      img.at(x, y, 2) = 0.5f * (img.at(x, y, 0) + img.at(x, y, 1));
    }
  }
  return img;
}

ImageBuffer noise_grey(int w, int h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  ImageBuffer img(w, h, 1);
  for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = u(gen);
  return img;
}

ImageBuffer noise_rgb(int w, int h, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  ImageBuffer img(w, h, 3);
  for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = u(gen);
  return img;
}

ImageBuffer disc_object(int size, double radius, double hole_radius) {
  ImageBuffer img(size, size, 3, 1.0f);
  const double c = (size - 1) / 2.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double r = std::hypot(x - c, y - c);
      if (r <= radius && r >= hole_radius) {
        img.at(x, y, 0) = 0.2f;
        img.at(x, y, 1) = 0.3f;
        img.at(x, y, 2) = 0.4f;
      }
    }
  }
  return img;
}

std::vector<std::complex<double>> naive_dft(const std::vector<double>& values, int w, int h) {
  std::vector<std::complex<double>> out(values.size());
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      std::complex<double> acc = 0.0;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double angle = -2.0 * std::numbers::pi * (static_cast<double>(u * x) / w + static_cast<double>(v * y) / h);
          acc += values[static_cast<std::size_t>(y * w + x)] * std::polar(1.0, angle);
        }
      }
      out[static_cast<std::size_t>(v * w + u)] = acc;
    }
  }
  return out;
}

std::vector<StimulusRecord> cue_conflict_records(const std::string& prefix) {
  std::vector<StimulusRecord> out;
  int i = 0;
  for (int s = 0; s < texshape::kCategoryCount; ++s) {
    for (int t = 0; t < texshape::kCategoryCount; ++t) {
      for (int r = 0; r < 5; ++r, ++i) {
        StimulusRecord rec;
        rec.id = prefix + std::to_string(i);
        rec.condition = StimulusCondition::cue_conflict_style_transfer;
        rec.shape_category = texshape::category_at(s);
        rec.texture_category = texshape::category_at(t);
        rec.source_content = std::string(texshape::kCategoryNames[static_cast<std::size_t>(s)]) + std::to_string(r);
        rec.source_texture = std::string(texshape::kCategoryNames[static_cast<std::size_t>(t)]) + std::to_string(r);
        rec.path = rec.id + ".png";
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<StimulusRecord> single_cue_records(const std::string& prefix, int n) {
  std::vector<StimulusRecord> out;
  for (int i = 0; i < n; ++i) {
    StimulusRecord rec;
    rec.id = prefix + std::to_string(i);
    rec.condition = StimulusCondition::original;
    rec.shape_category = texshape::category_at(i % texshape::kCategoryCount);
    rec.path = rec.id + ".png";
    out.push_back(std::move(rec));
  }
  return out;
}

texshape::trials::PlanConfig write_plan_inputs(const fs::path& dir, const std::string& id,
                                               const std::vector<StimulusRecord>& main,
                                               const std::vector<StimulusRecord>& practice) {
  fs::create_directories(dir);
  texshape::write_manifest(dir / (id + "_main.jsonl"), main);
  texshape::trials::PlanConfig c;
  c.id = id;
  c.manifests = {(dir / (id + "_main.jsonl")).string()};
  if (!practice.empty()) {
    texshape::write_manifest(dir / (id + "_practice.jsonl"), practice);
    c.practice_manifest = (dir / (id + "_practice.jsonl")).string();
  } else {
    c.practice_trials = 0;
  }
  return c;
}

double spectral_slope(const ImageBuffer& img, int lo, int hi) {
  namespace fft = texshape::fft;
  std::vector<double> values(img.data().begin(), img.data().end());
  const auto grid = fft::forward(values, img.width(), img.height());
  std::map<int, std::pair<double, int>> bins;
  for (int v = 0; v < img.height(); ++v) {
    for (int u = 0; u < img.width(); ++u) {
      const double f = std::hypot(fft::signed_frequency(u, img.width()), fft::signed_frequency(v, img.height()));
      const int r = static_cast<int>(std::lround(f));
      if (r < lo || r > hi) continue;
      bins[r].first += std::abs(grid.at(u, v));
      bins[r].second += 1;
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(bins.size());
  for (const auto& [r, acc] : bins) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(acc.first / acc.second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> taxonomy_closure_oracle() {
  std::multimap<std::string, std::string> up;
  std::ifstream in(data_path("taxonomy/hierarchy.tsv"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string child, parent;
    ls >> child >> parent;
    up.emplace(child, parent);
  }
  std::map<std::string, int> anchor_index;
  std::ifstream ain(data_path("taxonomy/anchors.tsv"));
  std::string name, synset;
  while (ain >> name >> synset) anchor_index[synset] = texshape::index_of(*texshape::parse_category(name));

  std::vector<int> out;
  std::ifstream lin(data_path("taxonomy/leaves.txt"));
  std::string leaf;
  while (lin >> leaf) {
    std::set<int> hits;
    std::set<std::string> seen{leaf};
    std::deque<std::string> queue{leaf};
    while (!queue.empty()) {
      const auto s = queue.front();
      queue.pop_front();
      if (auto it = anchor_index.find(s); it != anchor_index.end()) hits.insert(it->second);
      auto [b, e] = up.equal_range(s);
      for (auto i = b; i != e; ++i) {
        if (seen.insert(i->second).second) queue.push_back(i->second);
      }
    }
    if (hits.size() > 1) throw std::runtime_error("leaf " + leaf + " reaches several anchors");
    out.push_back(hits.empty() ? -1 : *hits.begin());
  }
  return out;
}

}  // namespace fixtures
