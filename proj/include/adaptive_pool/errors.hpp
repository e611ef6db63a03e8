#pragma once

#include <stdexcept>
#include <string>

namespace adaptive_pool {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid cannot fit the requested number of cells into the available pixels.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Shapes of two operands disagree (image vs grid, upstream vs cell counts, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or decoded.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Training diverged (non-finite loss).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace adaptive_pool
