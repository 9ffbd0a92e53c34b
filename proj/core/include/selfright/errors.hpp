#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selfright {

// Joint-layout or vector-size mismatch between inputs.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Degenerate cross-section or landscape.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite roll state during simulation.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// No module touches the floor at some sample of a sidewinding estimate.
class ContactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selfright
