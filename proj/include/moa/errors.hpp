#pragma once

#include <stdexcept>
#include <string>

namespace moa {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (length mismatch, empty input, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Requested computation is not available for this objective count.
class UnsupportedDimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Malformed or inconsistent study configuration. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent data files (archives, CSV). Maps to exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Analysis requested that does not apply to the problem at hand. Maps to exit code 4.
class IncompatibleAnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace moa
