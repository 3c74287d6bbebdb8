#pragma once

#include <stdexcept>

namespace deltadimer {

// Iterative solver hit its iteration cap before reaching the requested residual.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A grid-refinement pair could not deliver the requested error estimate.
class AccuracyNotReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The upper-bound curve has no stationary point for the given coupling.
class NoEquilibrium : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The total energy never drops below the dissociation threshold.
class NoBinding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of the called operation does not hold.
class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deltadimer
