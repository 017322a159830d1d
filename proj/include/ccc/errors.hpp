#pragma once

#include <stdexcept>

namespace ccc {

/// Raised for inputs outside the supported range of an operation (as opposed
/// to malformed inputs).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccc
