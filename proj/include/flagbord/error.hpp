#pragma once

#include <stdexcept>
#include <string>

namespace flagbord {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands that do not fit together: mismatched variable tables, unknown
// variables, non-homogeneous input where a slice was requested.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied parameter is out of range or inconsistent.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check disagreed. Seeing one of these means a bug or
// inconsistent input data, never a recoverable condition.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed user input (expressions, job files).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace flagbord
