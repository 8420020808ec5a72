#pragma once

#include <stdexcept>
#include <string>

namespace specdens {

// Base for every error raised by the library. Each subclass maps to a
// distinct CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Target outside the regime where a bound or closed form applies.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// A planner or simulator would exceed a configured size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Numerical failure such as a non-converging iteration.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace specdens
