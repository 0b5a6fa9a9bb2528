#pragma once

// All-order modified dynamics of the implicit midpoint rule for the linear
// wave equation.
//
// With T = −ih∂ₜ/2 and X = −ih∂ₓ/2 the modified Euler–Lagrange equation is
// T²u = arctan²(X) u, i.e. ü + A²u = 0 with A the Fourier multiplier
//
//     a(k) = (2/h) arctan(hk/2),
//
// and the configuration change u_h = φ(T², X²) u has generating function
//
//     φ = ψ(x) sqrt((1 + tan²t)(t² − arctan²x) / (tan²t − x²)),   ψ(x) = x / arctan x,
//
// at the symbol point (t, x).  With θ = arctan x the same function factors as
//
//     φ = (sin θ / θ) sqrt( (t − θ)/sin(t − θ) · (t + θ)/sin(t + θ) ),
//
// which has no cancellation on the removable set tan²t = x² (t = ±θ).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vmod/spectral.hpp"

namespace vmod {

/// (2/h) arctan(hk/2); reduces to k at h = 0.
template <typename Scalar>
Scalar a_symbol(Scalar k, Scalar h) {
  using std::atan;
  if (h == Scalar(0)) return k;
  return Scalar(2) / h * atan(h * k / Scalar(2));
}

/// ψ(x) = x / arctan x, continuous at 0 with ψ(0) = 1.
template <typename Scalar>
Scalar psi(Scalar x) {
  using std::abs;
  using std::atan;
  if (abs(x) < Scalar(1e-4)) return Scalar(1) + x * x / Scalar(3) - Scalar(4) * x * x * x * x / Scalar(45);
  return x / atan(x);
}

/// Scalar stand-ins for the operators T and X: t = hω/2, x = hk/2.
template <typename Scalar>
struct SymbolPoint {
  Scalar t;
  Scalar x;
};

namespace detail {

// y / sin y, with its Maclaurin series near the removable point y = 0.
template <typename Scalar>
Scalar inverse_sinc(Scalar y) {
  using std::abs;
  using std::sin;
  if (abs(y) < Scalar(1e-4)) {
    const Scalar y2 = y * y;
    return Scalar(1) + y2 / Scalar(6) + Scalar(7) * y2 * y2 / Scalar(360);
  }
  return y / sin(y);
}

template <typename Scalar>
Scalar sinc(Scalar y) {
  using std::abs;
  using std::sin;
  if (abs(y) < Scalar(1e-4)) return Scalar(1) - y * y / Scalar(6);
  return sin(y) / y;
}

// Maclaurin coefficients in s = t² of φ at angle θ = arctan x.
//
// With S(s) = sin²√s = Σ_{n≥1} S_n sⁿ, φ = (sin θ/θ) Q(s)^{-1/2} where Q is the
// divided difference (S(s) − S(θ²))/(s − θ²).  Its coefficients
// Q_j = Σ_{n>j} S_n θ^{2(n−1−j)} are tails of an entire series, so no
// cancellation against the removable root s = θ² occurs.
template <typename Scalar>
std::vector<Scalar> phi_coeffs_at_angle(Scalar theta, int order) {
  using std::abs;
  using std::pow;
  if (order < 0) throw std::invalid_argument("phi_coeffs: order must be >= 0");
  const int terms = order + 48;
  std::vector<Scalar> S(static_cast<std::size_t>(terms) + 2, Scalar(0));
  Scalar fact = 1;  // (2n)!
  for (int n = 1; n <= terms + 1; ++n) {
    fact *= Scalar(2 * n - 1) * Scalar(2 * n);
    const Scalar sign = (n % 2 == 1) ? Scalar(1) : Scalar(-1);
    S[static_cast<std::size_t>(n)] = sign * pow(Scalar(2), Scalar(2 * n - 1)) / fact;
  }
  const Scalar th2 = theta * theta;
  std::vector<Scalar> Q(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    Scalar acc = 0;
    Scalar power = 1;
    for (int n = j + 1; n <= terms + 1; ++n) {
      acc += S[static_cast<std::size_t>(n)] * power;
      power *= th2;
    }
    Q[static_cast<std::size_t>(j)] = acc;
  }
  // P = Q^α with α = −1/2:  n Q₀ P_n = Σ_{j=1}^{n} ((α + 1) j − n) Q_j P_{n−j}.
  const Scalar alpha = Scalar(-0.5);
  std::vector<Scalar> P(static_cast<std::size_t>(order) + 1);
  P[0] = pow(Q[0], alpha);
  for (int n = 1; n <= order; ++n) {
    Scalar acc = 0;
    for (int j = 1; j <= n; ++j) {
      acc += ((alpha + Scalar(1)) * Scalar(j) - Scalar(n)) * Q[static_cast<std::size_t>(j)] *
             P[static_cast<std::size_t>(n - j)];
    }
    P[static_cast<std::size_t>(n)] = acc / (Scalar(n) * Q[0]);
  }
  const Scalar scale = sinc(theta);
  for (auto& c : P) c *= scale;
  return P;
}

}  // namespace detail

/// Generating function φ at (t, x).  Throws std::domain_error for |t| ≥ π/2.
template <typename Scalar>
Scalar phi_symbol(const SymbolPoint<Scalar>& pt) {
  using std::abs;
  using std::atan;
  using std::sqrt;
  if (!(abs(pt.t) < std::numbers::pi_v<Scalar> / Scalar(2))) {
    throw std::domain_error("phi_symbol: |t| must be < pi/2");
  }
  const Scalar theta = atan(abs(pt.x));
  const Scalar radicand = detail::inverse_sinc(pt.t - theta) * detail::inverse_sinc(pt.t + theta);
  return detail::sinc(theta) * sqrt(radicand);
}

/// Coefficients c_0(x) … c_order(x) of φ(t, x) = Σ c_i(x) t^{2i}; c_0 ≡ 1.
template <typename Scalar>
std::vector<Scalar> phi_coeffs(Scalar x, int order) {
  using std::abs;
  using std::atan;
  return detail::phi_coeffs_at_angle(atan(abs(x)), order);
}

/// lim_{x→∞} of phi_coeffs(x, order), i.e. the expansion of sec t · sqrt(1 − 4t²/π²).
template <typename Scalar>
std::vector<Scalar> phi_coeffs_at_infinity(int order) {
  return detail::phi_coeffs_at_angle(std::numbers::pi_v<Scalar> / Scalar(2), order);
}

/// Evaluates the expansion truncated after t^{2·order}.
template <typename Scalar>
Scalar phi_series(const SymbolPoint<Scalar>& pt, int order) {
  const std::vector<Scalar> c = phi_coeffs(pt.x, order);
  const Scalar s = pt.t * pt.t;
  Scalar acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

/// Exact flow of ü + A²u = 0 for time t, with the p component read as u̇.
template <typename Scalar>
State<Scalar> exact_linear_evolve(const State<Scalar>& U0, Scalar t, Scalar h) {
  using std::cos;
  using std::sin;
  const Eigen::Index n = U0.size();
  const Spectrum<Scalar> uh = spectrum(U0.u);
  const Spectrum<Scalar> ph = spectrum(U0.p);
  Spectrum<Scalar> uo(n / 2 + 1), po(n / 2 + 1);
  uo[0] = uh[0] + t * ph[0];
  po[0] = ph[0];
  for (Eigen::Index k = 1; k <= n / 2; ++k) {
    const Scalar a = a_symbol(Scalar(k), h);
    const Scalar c = cos(a * t);
    const Scalar s = sin(a * t);
    uo[k] = c * uh[k] + (s / a) * ph[k];
    po[k] = -a * s * uh[k] + c * ph[k];
  }
  return {synthesize<Scalar>(uo, n), synthesize<Scalar>(po, n)};
}

/// Midpoint data (u, p) → (u, u̇) for the all-order flow: u̇̂_k = (a(k)/k) p̂_k.
template <typename Scalar>
State<Scalar> init_linear_allorder(const State<Scalar>& U, Scalar h) {
  return {U.u, fourier_multiply(U.p, [h](Eigen::Index k) {
            return k == 0 ? Scalar(1) : a_symbol(Scalar(k), h) / Scalar(k);
          })};
}

/// Inverse of init_linear_allorder: p̂_k = (k/a(k)) u̇̂_k.
template <typename Scalar>
State<Scalar> linear_allorder_to_midpoint(const State<Scalar>& U, Scalar h) {
  return {U.u, fourier_multiply(U.p, [h](Eigen::Index k) {
            return k == 0 ? Scalar(1) : Scalar(k) / a_symbol(Scalar(k), h);
          })};
}

}  // namespace vmod
