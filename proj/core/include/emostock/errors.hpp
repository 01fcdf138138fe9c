#pragma once

#include <stdexcept>
#include <string>

namespace emostock {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation precondition (bad lag, empty input, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data is structurally malformed (bad CSV header, corrupt JSONL, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Input data parsed but violates a domain invariant (OHLC consistency, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined on this input (constant series, < 3 distinct values).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Regression design matrix is rank deficient.
class SingularDesignError : public Error {
 public:
  using Error::Error;
};

/// Pipeline configuration is invalid; message carries the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A required upstream artifact does not exist on disk.
class MissingArtifactError : public Error {
 public:
  using Error::Error;
};

/// Underlying stream or filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace emostock
