#pragma once

#include <stdexcept>
#include <string>

namespace varleb {

// Bad inputs: malformed configs, unknown keys, incompatible geometry,
// operations requested on profiles that do not support them.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numeric trouble: non-positive values where positivity is required,
// overflow to non-finite, singular matrices, fits outside their budget.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace varleb
