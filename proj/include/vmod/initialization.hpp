#pragma once

// Maps between implicit-midpoint data and the variational modified system.
//
// Midpoint data (u, p) and the velocity u̇ of an interpolating curve differ at
// O(h²):
//
//     u̇ = p + (h²/12)(∂ₓₓp + f′(u)p),     p = u̇ − (h²/12)(∂ₓₓu̇ + f′(u)u̇).
//
// The variational modified system lives in transformed coordinates
// U_h = U − (h²/24)Ü, where Ü = (ü, p̈) follows from the modified equation and
// its time derivative:
//
//     K(u)ü = ∂ₓₓu + f(u) + (h²/12) f″(u)p²,
//     K(u)p̈ = ∂ₓₓp + f′(u)p + (h²/12) f‴(u)p³ + (h²/3) f″(u) p ü.
//
// Both rows are the fixed point Ü = (1 − (h²/6)∂ₓₓ)⁻¹ G(U, Ü) with G as above
// moved to the right-hand side, solved row by row with solve_K.

#include <limits>

#include "vmod/errors.hpp"
#include "vmod/modified_variational.hpp"
#include "vmod/potential.hpp"
#include "vmod/spectral.hpp"

namespace vmod {

template <typename Scalar>
Field<Scalar> udot_from_p(const Field<Scalar>& u, const Field<Scalar>& p, const Potential<Scalar>& pot, Scalar h) {
  if (h == Scalar(0)) return p;
  return p + (h * h / Scalar(12)) * (dxx(p) + pot.df_of(u).cwiseProduct(p));
}

template <typename Scalar>
Field<Scalar> p_from_udot(const Field<Scalar>& u, const Field<Scalar>& udot, const Potential<Scalar>& pot,
                          Scalar h) {
  if (h == Scalar(0)) return udot;
  return udot - (h * h / Scalar(12)) * (dxx(udot) + pot.df_of(u).cwiseProduct(udot));
}

/// Second time derivative (ü, p̈) of the variational modified flow through U.
template <typename Scalar>
State<Scalar> uddot_mod(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                        const KSolveConfig& cfg = {}) {
  const Scalar c = h * h;
  const Field<Scalar> d2f = pot.d2f_of(U.u);
  const Field<Scalar> p2 = U.p.cwiseAbs2();

  const Field<Scalar> z_u = dxx(U.u) + pot.f_of(U.u) + (c / Scalar(12)) * d2f.cwiseProduct(p2);
  Field<Scalar> uddot = solve_K(U.u, z_u, pot, h, cfg);

  const Field<Scalar> z_p = dxx(U.p) + pot.df_of(U.u).cwiseProduct(U.p) +
                            (c / Scalar(12)) * pot.d3f_of(U.u).cwiseProduct(p2.cwiseProduct(U.p)) +
                            (c / Scalar(3)) * d2f.cwiseProduct(U.p).cwiseProduct(uddot);
  Field<Scalar> pddot = solve_K(U.u, z_p, pot, h, cfg);
  return {std::move(uddot), std::move(pddot)};
}

/// Residual ‖(1 − (h²/6)∂ₓₓ)Ü − G(U, Ü)‖ of the defining fixed-point equation.
template <typename Scalar>
Scalar uddot_residual(const State<Scalar>& U, const State<Scalar>& Udd, const Potential<Scalar>& pot, Scalar h) {
  const Scalar c = h * h;
  const Field<Scalar> dfu = pot.df_of(U.u);
  const Field<Scalar> d2f = pot.d2f_of(U.u);
  const Field<Scalar> p2 = U.p.cwiseAbs2();
  State<Scalar> G;
  G.u = (c / Scalar(6)) * dfu.cwiseProduct(Udd.u) + dxx(U.u) + pot.f_of(U.u) +
        (c / Scalar(12)) * d2f.cwiseProduct(p2);
  G.p = (c / Scalar(6)) * dfu.cwiseProduct(Udd.p) + dxx(U.p) + dfu.cwiseProduct(U.p) +
        (c / Scalar(12)) * pot.d3f_of(U.u).cwiseProduct(p2.cwiseProduct(U.p)) +
        (c / Scalar(3)) * d2f.cwiseProduct(U.p).cwiseProduct(Udd.u);
  const State<Scalar> LU{Udd.u - (c / Scalar(6)) * dxx(Udd.u), Udd.p - (c / Scalar(6)) * dxx(Udd.p)};
  return norm_l2(State<Scalar>(LU - G));
}

/// U ↦ U_h = U − (h²/24)Ü.
template <typename Scalar>
State<Scalar> transform(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                        const KSolveConfig& cfg = {}) {
  if (h == Scalar(0)) return U;
  return U - (h * h / Scalar(24)) * uddot_mod(U, pot, h, cfg);
}

/// Inverse of transform(): iterates U ← U_h + (h²/24)Ü(U).  On return the
/// forward map reproduces U_h to within cfg.tol in L² × L².
template <typename Scalar>
State<Scalar> untransform(const State<Scalar>& Uh, const Potential<Scalar>& pot, Scalar h,
                          const KSolveConfig& cfg = {}) {
  cfg.validate();
  if (h == Scalar(0)) return Uh;
  const Scalar c = h * h / Scalar(24);
  State<Scalar> U = Uh;
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iter; ++it) {
    State<Scalar> next = Uh + c * uddot_mod(U, pot, h, cfg);
    // next − U is exactly the forward-map residual of U.
    residual = static_cast<double>(norm_l2(State<Scalar>(next - U)));
    if (residual <= cfg.tol) return U;
    U = std::move(next);
  }
  throw NonConvergence("untransform: fixed-point iteration did not converge", cfg.max_iter, residual);
}

/// Midpoint data (u, p) → initial state of the variational modified system.
template <typename Scalar>
State<Scalar> midpoint_to_variational(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                                      const KSolveConfig& cfg = {}) {
  return untransform(State<Scalar>{U.u, udot_from_p(U.u, U.p, pot, h)}, pot, h, cfg);
}

/// Variational modified state → midpoint variables (u, p) for comparison.
template <typename Scalar>
State<Scalar> variational_to_midpoint(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h,
                                      const KSolveConfig& cfg = {}) {
  State<Scalar> Uh = transform(U, pot, h, cfg);
  Uh.p = p_from_udot(Uh.u, Uh.p, pot, h);
  return Uh;
}

}  // namespace vmod
