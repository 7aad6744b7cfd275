#pragma once

#include <stdexcept>
#include <string>

namespace hypara {

// Bad user or caller input (non-positive diffusivity, bad grid, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The kernel support is too small relative to the mesh.
class MeshTooCoarse : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

// A single explicit step was requested with a time step above its stability limit.
class StepRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values appeared in a solution field.
class Diverged : public std::runtime_error {
 public:
  Diverged(std::string field, long step)
      : std::runtime_error("non-finite value in field '" + field + "' at step " +
                           std::to_string(step)),
        field_(std::move(field)),
        step_(step) {}

  const std::string& field() const noexcept { return field_; }
  long step() const noexcept { return step_; }

 private:
  std::string field_;
  long step_;
};

// A runtime audit (positivity, boundary pinning) failed.
class AuditFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed snapshot, series or config input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypara
