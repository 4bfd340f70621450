#pragma once

#include <stdexcept>
#include <string>

namespace sdeslab {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rejected input: bad widths, malformed bit strings, invalid weights.
struct InvalidArgument : Error {
  using Error::Error;
};

// Text too short for a requested n-gram order, or corpus below the
// minimum size for model building.
struct InsufficientText : Error {
  using Error::Error;
};

// File read/write failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace sdeslab
