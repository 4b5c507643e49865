#pragma once

#include <stdexcept>
#include <string>

namespace ldsl {

/// Raised for invariant violations, window mismatches and numerical failures
/// (overflow, Cholesky breakdown). Messages are single-line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldsl
