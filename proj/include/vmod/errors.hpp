#pragma once

#include <stdexcept>
#include <string>

namespace vmod {

/// A fixed-point iteration exhausted its iteration budget above tolerance.
/// Usually means the step size is too large for the contraction.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual, long step = -1)
      : std::runtime_error(what), iterations_(iterations), residual_(residual), step_(step) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }
  /// Time-step index at which the failure happened, or -1 if not inside an evolution.
  long step() const { return step_; }

  NonConvergence at_step(long step) const {
    return {std::string(what()) + " (at step " + std::to_string(step) + ")", iterations_, residual_, step};
  }

 private:
  int iterations_;
  double residual_;
  long step_;
};

/// Stopping rule shared by every Picard-type solve in the library.
struct FixedPointConfig {
  double tol = 1e-12;  // absolute L² residual
  int max_iter = 100;

  void validate() const {
    if (!(tol > 0)) throw std::invalid_argument("FixedPointConfig: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("FixedPointConfig: max_iter must be >= 1");
  }
};

using KSolveConfig = FixedPointConfig;

}  // namespace vmod
