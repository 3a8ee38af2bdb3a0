#pragma once
#include <stdexcept>
#include <string>

namespace ghostsim {

/// Base class for all library errors.
struct sim_error : std::runtime_error {
  explicit sim_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent configuration (bad key, bad value, violated layout invariant).
struct config_error : sim_error {
  explicit config_error(const std::string &msg) : sim_error(msg) {}
};

/// Numeric or domain failure at run time (bad operand, insufficient data, solver failure).
struct numeric_error : sim_error {
  explicit numeric_error(const std::string &msg) : sim_error(msg) {}
};

/// File-system failure (unreadable input, unwritable output, malformed artifact file).
struct io_error : sim_error {
  explicit io_error(const std::string &msg) : sim_error(msg) {}
};

/// A curve lacks the two-lobe structure needed for a dip measurement.
struct not_resolved_error : numeric_error {
  explicit not_resolved_error(const std::string &msg) : numeric_error(msg) {}
};

} // namespace ghostsim
