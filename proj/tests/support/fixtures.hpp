#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "texshape/imgcore/image.hpp"
#include "texshape/stimuli/manifest.hpp"
#include "texshape/trials/plan.hpp"

namespace fixtures {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path data_path(const std::string& relative);

// Deterministic test images.
texshape::ImageBuffer gradient_rgb(int w, int h);
texshape::ImageBuffer noise_grey(int w, int h, std::uint64_t seed);
texshape::ImageBuffer noise_rgb(int w, int h, std::uint64_t seed);
// Dark filled disc (optionally with a hole) on a white background.
texshape::ImageBuffer disc_object(int size, double radius, double hole_radius = 0.0);

// Naive O(N^2) 2-D DFT, unnormalized forward transform.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& values, int w, int h);

// Least-squares slope of log mean amplitude against log radial frequency
// over integer radii [lo, hi] of a single-channel image.
double spectral_slope(const texshape::ImageBuffer& img, int lo, int hi);

// Category index per line of data/taxonomy/leaves.txt (-1 when unmapped),
// by breadth-first search over the raw edge and anchor files.
std::vector<int> taxonomy_closure_oracle();

// n records of the given condition with synthetic categories and paths
// "<prefix><i>.png".
std::vector<texshape::StimulusRecord> cue_conflict_records(const std::string& prefix);  // 1280, balanced
std::vector<texshape::StimulusRecord> single_cue_records(const std::string& prefix, int n);

// Writes main/practice manifests into dir and returns a plan config on them.
texshape::trials::PlanConfig write_plan_inputs(const std::filesystem::path& dir, const std::string& id,
                                               const std::vector<texshape::StimulusRecord>& main,
                                               const std::vector<texshape::StimulusRecord>& practice);

}  // namespace fixtures
