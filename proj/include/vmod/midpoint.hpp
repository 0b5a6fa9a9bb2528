#pragma once

// Implicit midpoint rule for U̇ = AU + B(U).
//
// The half stage is the fixed point of
//
//     U_{n+1/2} = (1 − (h/2)A)⁻¹ (U_n + (h/2) B(U_{n+1/2})),
//
// where (1 − (h/2)A)⁻¹ is applied exactly, mode by mode, as a 2×2 inverse.
// The step is then completed with
//
//     U_{n+1} = S(hA) U_n + h (1 − (h/2)A)⁻¹ B(U_{n+1/2}),   S(z) = (1 + z/2)/(1 − z/2).

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "vmod/errors.hpp"
#include "vmod/spectral.hpp"
#include "vmod/wave_model.hpp"

namespace vmod {

/// S(z) = (1 + z/2)/(1 − z/2).  Throws std::domain_error at the pole z = 2.
template <typename Scalar>
std::complex<Scalar> stability_function(std::complex<Scalar> z) {
  const std::complex<Scalar> den = Scalar(1) - z / Scalar(2);
  if (den == std::complex<Scalar>(0)) throw std::domain_error("stability_function: pole at z = 2");
  return (Scalar(1) + z / Scalar(2)) / den;
}

struct StepReport {
  int iterations = 0;
  double residual = 0;
};

template <typename Scalar>
struct StepResult {
  State<Scalar> state;
  StepReport report;
};

namespace detail {

template <typename Scalar>
struct Mat2 {
  Scalar m00, m01, m10, m11;
};

// Applies a real 2×2 matrix per wave number to the spectra of (u, p).
template <typename Scalar, typename Matrix2>
State<Scalar> apply_mode_matrix(const State<Scalar>& U, Matrix2&& m) {
  const Eigen::Index n = U.size();
  const Spectrum<Scalar> uh = spectrum(U.u);
  const Spectrum<Scalar> ph = spectrum(U.p);
  Spectrum<Scalar> uo(n / 2 + 1), po(n / 2 + 1);
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    const auto [m00, m01, m10, m11] = m(k);
    uo[k] = m00 * uh[k] + m01 * ph[k];
    po[k] = m10 * uh[k] + m11 * ph[k];
  }
  return {synthesize<Scalar>(uo, n), synthesize<Scalar>(po, n)};
}

// (1 − (h/2)A_k)⁻¹ with A_k = [[0, 1], [−k², 0]].
template <typename Scalar>
Mat2<Scalar> half_step_inverse(Eigen::Index k, Scalar h) {
  const Scalar k2 = Scalar(k) * Scalar(k);
  const Scalar det = Scalar(1) + h * h * k2 / Scalar(4);
  return {Scalar(1) / det, (h / Scalar(2)) / det, -(h * k2 / Scalar(2)) / det, Scalar(1) / det};
}

// S(hA_k) = (1 + (h/2)A_k)(1 − (h/2)A_k)⁻¹.
template <typename Scalar>
Mat2<Scalar> cayley(Eigen::Index k, Scalar h) {
  const Scalar k2 = Scalar(k) * Scalar(k);
  const Scalar det = Scalar(1) + h * h * k2 / Scalar(4);
  const Scalar diag = (Scalar(1) - h * h * k2 / Scalar(4)) / det;
  return {diag, h / det, -h * k2 / det, diag};
}

}  // namespace detail

/// One implicit midpoint step of size h (h may be negative for backward steps).
/// Throws NonConvergence if the half-stage iteration does not reach cfg.tol.
template <typename Scalar>
StepResult<Scalar> midpoint_step(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                                 const FixedPointConfig& cfg = {}) {
  cfg.validate();
  if (h == Scalar(0)) throw std::invalid_argument("midpoint_step: h must be nonzero");
  const auto inverse = [h](Eigen::Index k) { return detail::half_step_inverse(k, h); };
  const auto apply_inverse = [&](const State<Scalar>& V) { return detail::apply_mode_matrix(V, inverse); };

  // Initial guess: the B-free half stage.
  State<Scalar> half = apply_inverse(U);
  StepReport report;
  report.residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.max_iter; ++it) {
    State<Scalar> next = apply_inverse(U + (h / Scalar(2)) * nonlinear_part(half, pot));
    report.iterations = it;
    report.residual = static_cast<double>(norm_l2(State<Scalar>(next - half)));
    half = std::move(next);
    if (report.residual <= cfg.tol) break;
  }
  if (!(report.residual <= cfg.tol)) {
    throw NonConvergence("midpoint_step: half-stage iteration did not converge; reduce h", report.iterations,
                         report.residual);
  }

  const auto cayley = [h](Eigen::Index k) { return detail::cayley(k, h); };
  State<Scalar> next = detail::apply_mode_matrix(U, cayley) + h * apply_inverse(nonlinear_part(half, pot));
  return {std::move(next), report};
}

/// Observer invoked after every step with (step index, state, report).
template <typename Scalar>
using StepObserver = std::function<void(long, const State<Scalar>&, const StepReport&)>;

/// n_steps midpoint steps from U0.  Returns the full trajectory [U0, …, U_n].
template <typename Scalar>
std::vector<State<Scalar>> midpoint_evolve(const State<Scalar>& U0, const Potential<Scalar>& pot, Scalar h,
                                           long n_steps, const FixedPointConfig& cfg = {},
                                           const std::type_identity_t<StepObserver<Scalar>>& observe = {}) {
  if (n_steps < 0) throw std::invalid_argument("midpoint_evolve: n_steps must be >= 0");
  std::vector<State<Scalar>> traj;
  traj.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.push_back(U0);
  for (long n = 0; n < n_steps; ++n) {
    try {
      auto [next, report] = midpoint_step(traj.back(), pot, h, cfg);
      if (observe) observe(n + 1, next, report);
      traj.push_back(std::move(next));
    } catch (const NonConvergence& e) {
      throw e.at_step(n + 1);
    }
  }
  return traj;
}

}  // namespace vmod
