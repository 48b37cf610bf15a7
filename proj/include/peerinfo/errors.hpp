#pragma once

#include <stdexcept>
#include <string>

namespace peerinfo {

/// Raised when an input violates a documented precondition or schema.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation produces or encounters a non-finite value.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace peerinfo
