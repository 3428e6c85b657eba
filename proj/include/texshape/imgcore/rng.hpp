#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace texshape {

// FNV-1a 64-bit; used to fold stream ids into seeds.
std::uint64_t fnv1a64(std::string_view text) noexcept;

// Deterministic random stream keyed by (seed, stream id).
//
// Generator: xoshiro256** whose 256-bit state is filled by four SplitMix64
// steps starting from seed ^ fnv1a64(stream_id). uniform() takes the top 53
// bits of a draw; below(n) uses Lemire's unbiased multiply-shift rejection;
// normal() is Box-Muller on two uniforms. Integer sequences are
// bit-identical on every platform; normal() depends on libm log/cos.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;
  // [0, 1)
  double uniform() noexcept;
  // [lo, hi)
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) noexcept;
  // Standard normal.
  double normal() noexcept;

  // Stream "<id>/<suffix>" on the same seed; does not advance this stream.
  RngStream child(std::string_view suffix) const;

  template <class T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::string stream_id_;
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_normal_;
};

}  // namespace texshape
