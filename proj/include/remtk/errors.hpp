#pragma once

#include <stdexcept>
#include <string>

namespace remtk {

// Exit-code mapping used by the CLI: ValidationError -> 2,
// InsufficientDataError -> 3, NumericError -> 4.

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace remtk
