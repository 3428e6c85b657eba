#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace texshape {

enum class Errc {
  invalid_argument,
  not_found,
  unsupported_format,
  corrupt_data,
  io_error,
  parse_error,
  schema_mismatch,
  invalid_state,
  ambiguous,
  missing_data,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace texshape
