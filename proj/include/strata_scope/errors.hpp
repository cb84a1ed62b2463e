#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strata_scope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed partition / nest text. `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        detail_(message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  // The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

// An exhaustive enumeration was requested beyond its default cap without the
// force flag.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Raised when the stratum dimension model produces a negative fiber
// dimension. Never expected to fire.
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace strata_scope
