#pragma once

// Variational modified system obtained from the modified Lagrangian after the
// near-identity change of variables u_h = u − (h²/24)ü:
//
//     K(u)ü = ∂ₓₓu + f(u) + (h²/12) f″(u) u̇²,
//     K(u)v = (1 − (h²/6) f′(u) − (h²/6) ∂ₓₓ) v.
//
// Written as a first-order system in (u, p) with p = u̇.  K(u) is inverted by
// Picard iteration on v = (1 − (h²/6)∂ₓₓ)⁻¹ (z + (h²/6) f′(u) v), which
// contracts in L² with constant (h²/6)‖f′(u)‖_∞.

#include <cmath>
#include <limits>

#include "vmod/errors.hpp"
#include "vmod/potential.hpp"
#include "vmod/spectral.hpp"
#include "vmod/wave_model.hpp"

namespace vmod {

template <typename Scalar>
Field<Scalar> apply_K(const Field<Scalar>& u, const Field<Scalar>& v, const Potential<Scalar>& pot, Scalar h) {
  if (h == Scalar(0)) return v;
  const Scalar mu = h * h / Scalar(6);
  return v - mu * pot.df_of(u).cwiseProduct(v) - mu * dxx(v);
}

/// Solves K(u)v = z.  On return ‖K(u)v − z‖_{L²} ≤ cfg.tol; throws
/// NonConvergence otherwise.
template <typename Scalar>
Field<Scalar> solve_K(const Field<Scalar>& u, const Field<Scalar>& z, const Potential<Scalar>& pot, Scalar h,
                      const KSolveConfig& cfg = {}, int* iterations = nullptr) {
  cfg.validate();
  if (h == Scalar(0)) {
    if (iterations) *iterations = 0;
    return z;
  }
  const Scalar mu = h * h / Scalar(6);
  const Field<Scalar> weight = mu * pot.df_of(u);
  Field<Scalar> v = inv_helmholtz(z, mu);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= cfg.max_iter; ++it) {
    residual = static_cast<double>(norm_l2(Field<Scalar>(apply_K(u, v, pot, h) - z)));
    if (iterations) *iterations = it;
    if (residual <= cfg.tol) return v;
    if (it == cfg.max_iter) break;
    v = inv_helmholtz(Field<Scalar>(z + weight.cwiseProduct(v)), mu);
  }
  throw NonConvergence("solve_K: Picard iteration did not converge; h too large for this u", cfg.max_iter,
                       residual);
}

/// (p, K(u)⁻¹(∂ₓₓu + f(u) + (h²/12) f″(u)p²)).
template <typename Scalar>
State<Scalar> rhs_mod_var(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                          const KSolveConfig& cfg = {}) {
  if (h == Scalar(0)) return rhs(U, pot);
  const Field<Scalar> z =
      dxx(U.u) + pot.f_of(U.u) + (h * h / Scalar(12)) * pot.d2f_of(U.u).cwiseProduct(U.p.cwiseAbs2());
  return {U.p, solve_K(U.u, z, pot, h, cfg)};
}

/// Conserved energy H + (h²/12) ∫ (∂ₓp)² − f′(u)p² dx, with p = u̇.
template <typename Scalar>
Scalar e_mod_var(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h) {
  const Scalar base = energy(U, pot);
  if (h == Scalar(0)) return base;
  const Scalar correction =
      dirichlet_energy(U.p) - integral(Field<Scalar>(pot.df_of(U.u).cwiseProduct(U.p.cwiseAbs2())));
  return base + h * h / Scalar(12) * correction;
}

/// Linear frequency |k|/sqrt(1 + h²k²/6), bounded by sqrt(6)/h.
template <typename Scalar>
Scalar omega_var(Scalar k, Scalar h) {
  using std::abs;
  using std::sqrt;
  return abs(k) / sqrt(Scalar(1) + h * h * k * k / Scalar(6));
}

}  // namespace vmod
