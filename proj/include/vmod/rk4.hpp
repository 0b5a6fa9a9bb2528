#pragma once

#include "vmod/spectral.hpp"

namespace vmod {

/// Classical fourth-order Runge–Kutta step for U̇ = rhs(U).
template <typename Scalar, typename Rhs>
State<Scalar> rk4_step(Rhs&& rhs, const State<Scalar>& U, Scalar dt) {
  const Scalar half = dt / Scalar(2);
  const State<Scalar> k1 = rhs(U);
  const State<Scalar> k2 = rhs(State<Scalar>(U + half * k1));
  const State<Scalar> k3 = rhs(State<Scalar>(U + half * k2));
  const State<Scalar> k4 = rhs(State<Scalar>(U + dt * k3));
  State<Scalar> out = U;
  out += (dt / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
  return out;
}

/// n fixed steps of size dt.
template <typename Scalar, typename Rhs>
State<Scalar> rk4_evolve(Rhs&& rhs, State<Scalar> U, Scalar dt, long n) {
  for (long i = 0; i < n; ++i) U = rk4_step(rhs, U, dt);
  return U;
}

}  // namespace vmod
