#pragma once

#include <stdexcept>
#include <string>

namespace ivr {

// Raised when inputs, files, or configuration fail a precondition.
// The CLI maps this to exit code 1; everything else maps to exit code 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ivr
