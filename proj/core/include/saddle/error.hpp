#pragma once

#include <stdexcept>
#include <string>

namespace saddle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different grids or have the wrong length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// v - alpha*g collapsed to (numerically) zero norm.
class RetractionError : public Error {
 public:
  using Error::Error;
};

/// Support-space Gram matrix is singular or too badly conditioned.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Invalid user data: boundary values, empty indicator sets, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Linear solver breakdown.
class SolverError : public Error {
 public:
  using Error::Error;
};

class PeakSelectionError : public Error {
 public:
  using Error::Error;
};

class StepSearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace saddle
