#pragma once

#include <stdexcept>

namespace eigensense {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or configuration: unknown columns, dimension mismatches,
// capacity limits, malformed options.  Callers can fix these by changing
// what they asked for.
struct ValidationError : Error {
  using Error::Error;
};

// Input/output failures: unreadable files, unparsable data, write errors.
struct IoError : Error {
  using Error::Error;
};

// A computation that cannot proceed on this data: zero-variance columns,
// complex eigenvalues, grids with no probability mass.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace eigensense
