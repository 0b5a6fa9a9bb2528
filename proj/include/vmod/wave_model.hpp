#pragma once

// Semilinear wave equation ü = ∂ₓₓu + f(u) on the circle, written as the
// first-order system U̇ = AU + B(U) with U = (u, p), p = u̇.

#include "vmod/potential.hpp"
#include "vmod/spectral.hpp"

namespace vmod {

/// (p, ∂ₓₓu + f(u)).
template <typename Scalar>
State<Scalar> rhs(const State<Scalar>& U, const Potential<Scalar>& pot) {
  return {U.p, dxx(U.u) + pot.f_of(U.u)};
}

/// Linear part AU = (p, ∂ₓₓu).
template <typename Scalar>
State<Scalar> linear_part(const State<Scalar>& U) {
  return {U.p, dxx(U.u)};
}

/// Nonlinear part B(U) = (0, f(u)).
template <typename Scalar>
State<Scalar> nonlinear_part(const State<Scalar>& U, const Potential<Scalar>& pot) {
  return {Field<Scalar>::Zero(U.size()), pot.f_of(U.u)};
}

/// H = ∫ ½p² + ½(∂ₓu)² − V(u) dx.
template <typename Scalar>
Scalar energy(const State<Scalar>& U, const Potential<Scalar>& pot) {
  return Scalar(0.5) * inner(U.p, U.p) + Scalar(0.5) * dirichlet_energy(U.u) - integral(pot.V_of(U.u));
}

/// J = ∫ p ∂ₓu dx.
template <typename Scalar>
Scalar momentum(const State<Scalar>& U) {
  return inner(U.p, dx(U.u));
}

}  // namespace vmod
