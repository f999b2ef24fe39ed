#pragma once

#include <stdexcept>
#include <string>

namespace centrank {

// Base for all library errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags or inconsistent options.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or missing input data (files, graphs, models).
class InputError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown: non-finite values, failed factorizations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace centrank
