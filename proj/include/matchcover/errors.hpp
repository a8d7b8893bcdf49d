#pragma once

#include <stdexcept>
#include <string>

namespace matchcover {

// Raised when a computation would exceed the desk-scale enumeration limits.
// Callers can lift the limit explicitly (CLI: --override-guards).
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input documents (family files etc.).
struct format_error : std::runtime_error {
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace matchcover
