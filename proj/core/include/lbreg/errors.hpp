#pragma once

#include <stdexcept>
#include <string>

namespace lbreg {

// Argument outside the (interior of the) domain of the function being evaluated.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vector claimed to be a subgradient fails the membership test.
struct SubgradientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Energy/kernel pair has no registered smoothness constant or closed-form subproblem.
struct UnsupportedPairError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closed-form root or value left the representable range.
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver configuration rejected before iteration 0.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite iterate produced while iterating.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& what, long iteration)
      : std::runtime_error(what), iteration(iteration) {}
  long iteration;
};

// A maintained algorithmic invariant (e.g. dual membership) broke mid-run.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sign-pattern enumeration accepted no candidate.
struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sign-pattern enumeration accepted two distinct candidates.
struct AmbiguityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trajectory left the radius inside which local constants are estimated.
struct UnboundedTrajectoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lbreg
