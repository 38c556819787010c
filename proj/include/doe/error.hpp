#pragma once

#include <stdexcept>

namespace doe {

// Base of every toolkit error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed designs, unknown factors, invalid arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Size guards (factor counts beyond what the toolkit enumerates).
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An estimate could not be formed (empty comparison group, missing pairs).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents; the message carries row/column coordinates.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures (open/read/write).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace doe
