#pragma once

#include <stdexcept>
#include <string>

namespace holo {

/// Path with zero translation and zero rotation; nothing to allocate.
struct DegeneratePath : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Non-positive or non-finite kinematic constraint.
struct InvalidConstraint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Negative starting error passed to the error-scaling function.
struct InvalidError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidTimestep : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Metric requested on a record too small to evaluate it.
struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Path file rejected; `index` is the first offending waypoint.
struct PathFormatError : std::runtime_error {
  PathFormatError(int index_, const std::string& what_)
      : std::runtime_error("waypoint " + std::to_string(index_) + ": " + what_),
        index(index_) {}
  int index;
};

}  // namespace holo
