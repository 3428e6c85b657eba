#include "texshape/taxonomy/category.hpp"

namespace texshape {

std::optional<Category> parse_category(std::string_view name) noexcept {
  for (int i = 0; i < kCategoryCount; ++i) {
    if (kCategoryNames[i] == name) return category_at(i);
  }
  return std::nullopt;
}

}  // namespace texshape
