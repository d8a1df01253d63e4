#pragma once

#include <stdexcept>
#include <string>

namespace catknock {

// Invalid argument values: prior parameters, shapes, category codes.
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Conditioning on a null event (zero marginal probability).
struct conditioning_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to reach its tolerance; carries the residual at exit.
struct convergence_error : std::runtime_error {
  convergence_error(const std::string& msg, double residual)
      : std::runtime_error(msg), residual(residual) {}
  double residual;
};

// Work limit exceeded (enumeration caps and similar).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV, JSON configs).
struct ingestion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace catknock
