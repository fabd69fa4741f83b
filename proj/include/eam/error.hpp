#pragma once

#include <stdexcept>
#include <string>

namespace eam {

/// Computational failure (broken inputs detected mid-computation, solver trouble).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request outside what a model supports, e.g. AKLT entropy of a non-contiguous block.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace eam
