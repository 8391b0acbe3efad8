#pragma once

#include <stdexcept>

namespace multiloc {

// Root of all library errors; callers can catch this or a specific kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value (out-of-range parameter, bad band, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Degenerate or malformed input data (too few samples, duplicate ids, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Scene geometry violation (trajectory outside the area, bad pattern, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Dimension mismatch between data and model/config.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A composed pipeline stage failed (divergence, zero localized frames, ...).
class PipelineError : public Error {
 public:
  using Error::Error;
};

// File I/O failure; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace multiloc
