#pragma once

// Classical second-order modified system of the implicit midpoint rule:
//
//     U̇ = F(U) + h² F₂(U),
//     F₂(U) = (1/12) (∂ₓₓp + f′(u)p, (∂ₓₓ + f′(u))(∂ₓₓu + f(u))) − (1/24) (0, f″(u)p²),
//
// which is Hamiltonian with
//
//     H_mod = H + (h²/24) ∫ f′(u)p² − (∂ₓp)² − (∂ₓₓu + f(u))² dx.
//
// Its linear dispersion |k|·|1 − h²k²/12| is unbounded in k, which is what
// makes it stiff under explicit time stepping.

#include <cmath>

#include "vmod/potential.hpp"
#include "vmod/spectral.hpp"
#include "vmod/wave_model.hpp"

namespace vmod {

template <typename Scalar>
State<Scalar> f2(const State<Scalar>& U, const Potential<Scalar>& pot) {
  const Field<Scalar> dfu = pot.df_of(U.u);
  const Field<Scalar> force = dxx(U.u) + pot.f_of(U.u);
  State<Scalar> out;
  out.u = (dxx(U.p) + dfu.cwiseProduct(U.p)) / Scalar(12);
  out.p = (dxx(force) + dfu.cwiseProduct(force)) / Scalar(12) -
          pot.d2f_of(U.u).cwiseProduct(U.p.cwiseAbs2()) / Scalar(24);
  return out;
}

template <typename Scalar>
State<Scalar> rhs_mod_ham(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h) {
  State<Scalar> out = rhs(U, pot);
  if (h != Scalar(0)) out += (h * h) * f2(U, pot);
  return out;
}

template <typename Scalar>
Scalar h_mod_energy(const State<Scalar>& U, const Potential<Scalar>& pot, Scalar h) {
  const Scalar base = energy(U, pot);
  if (h == Scalar(0)) return base;
  const Field<Scalar> force = dxx(U.u) + pot.f_of(U.u);
  const Scalar correction =
      integral(Field<Scalar>(pot.df_of(U.u).cwiseProduct(U.p.cwiseAbs2()))) - dirichlet_energy(U.p) -
      inner(force, force);
  return base + h * h / Scalar(24) * correction;
}

/// Frequency of wave number k under the linearized system: |k|·|1 − h²k²/12|.
template <typename Scalar>
Scalar omega_ham(Scalar k, Scalar h) {
  using std::abs;
  return abs(k) * abs(Scalar(1) - h * h * k * k / Scalar(12));
}

}  // namespace vmod
