#pragma once

#include <stdexcept>
#include <string>

namespace bwb {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a mathematical precondition (not PSD, singular, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dimension or length mismatch between arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Spectral rank too low for the requested diagnostic.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Degenerate weight vector (negative entries or zero total mass).
class WeightError : public Error {
 public:
  using Error::Error;
};

/// Invalid run or generator configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File I/O, parse, or checksum failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Bootstrap resampling could not produce a well-posed draw within budget.
class DegenerateResampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwb
