#pragma once

#include <stdexcept>
#include <string>

namespace bricard {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument fell outside the valid interval of the operation.
struct OutOfRange : Error {
  using Error::Error;
};

/// A residual function does not change sign on the feasible branch, so the
/// requested root does not exist there.
struct NoRootInBranch : Error {
  using Error::Error;
};

/// Joint angles that do not satisfy the closed-loop constraint.
struct InfeasibleAngles : Error {
  using Error::Error;
};

/// A square-root argument went negative beyond the clamping tolerance.
struct NegativeRadicand : Error {
  using Error::Error;
};

/// Pose at (or numerically indistinguishable from) a workspace boundary where
/// the screw system loses its normalization.
struct DegenerateConfiguration : Error {
  using Error::Error;
};

/// The transmission wrench is reciprocal to the driving joint: no force can
/// be transmitted through the branch at this pose.
struct SingularBranch : Error {
  using Error::Error;
};

/// A denominator (Jacobian, constraint gradient) vanished.
struct Singular : Error {
  using Error::Error;
};

/// Loop-count parity violation: the link combination admits no integral
/// number of independent loops.
struct NonIntegralLoopCount : Error {
  using Error::Error;
};

/// A node id that is not part of the graph.
struct UnknownNode : Error {
  using Error::Error;
};

}  // namespace bricard
