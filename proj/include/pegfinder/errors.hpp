#pragma once

#include <stdexcept>
#include <string>

namespace pegfinder {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data was violated (bad curve file, unknown
/// corpus name, gaps off the simplex, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A solver, tracer or finder did not produce a result.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A configuration whose geometry is undefined (coincident triangle vertices,
/// points inside the fat-diagonal guard, ...).
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

}  // namespace pegfinder
