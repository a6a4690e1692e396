// Error types. Contract violations throw std::invalid_argument; failures of
// the numerics themselves (non-convergence, collisions, lost minima) throw
// NumericalError so callers can distinguish bad input from a failed run.
#pragma once

#include <stdexcept>
#include <string>

namespace ionrot {

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ionrot
