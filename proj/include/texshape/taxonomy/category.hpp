#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace texshape {

// The 16 entry-level categories, in index order.
enum class Category : std::uint8_t {
  airplane,
  bear,
  bicycle,
  bird,
  boat,
  bottle,
  car,
  cat,
  chair,
  clock,
  dog,
  elephant,
  keyboard,
  knife,
  oven,
  truck,
};

inline constexpr int kCategoryCount = 16;

inline constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "airplane", "bear",  "bicycle", "bird",     "boat",     "bottle", "car",  "cat",
    "chair",    "clock", "dog",     "elephant", "keyboard", "knife",  "oven", "truck",
};

constexpr int index_of(Category c) noexcept { return static_cast<int>(c); }
constexpr Category category_at(int index) noexcept { return static_cast<Category>(index); }
constexpr std::string_view to_string(Category c) noexcept { return kCategoryNames[index_of(c)]; }

std::optional<Category> parse_category(std::string_view name) noexcept;

constexpr std::array<Category, kCategoryCount> all_categories() noexcept {
  std::array<Category, kCategoryCount> out{};
  for (int i = 0; i < kCategoryCount; ++i) out[i] = category_at(i);
  return out;
}

}  // namespace texshape
