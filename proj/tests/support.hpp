#pragma once

// Independent oracles shared by the unit tests.  Nothing here goes through the
// library's FFT path: fields are synthesized and analysed by direct summation.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vmod/vmod.hpp"

namespace oracle {

using vmod::Field;
using vmod::State;
using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

inline Field<double> grid_points(Eigen::Index n) {
  Field<double> x(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = 2 * pi * static_cast<double>(j) / static_cast<double>(n);
  return x;
}

template <typename Fn>
Field<double> sample(Eigen::Index n, Fn&& fn) {
  const Field<double> x = grid_points(n);
  Field<double> v(n);
  for (Eigen::Index j = 0; j < n; ++j) v[j] = fn(x[j]);
  return v;
}

/// Fourier coefficients c_k = (1/N) Σ_j v_j e^{−ikx_j}, k = 0 … N/2.
inline std::vector<cplx> dft(const Field<double>& v) {
  const Eigen::Index n = v.size();
  std::vector<cplx> c(static_cast<std::size_t>(n / 2 + 1));
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    cplx acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) acc += v[j] * std::polar(1.0, -2 * pi * double(k * j) / double(n));
    c[static_cast<std::size_t>(k)] = acc / double(n);
  }
  return c;
}

/// Real field with half-spectrum c (k = 0 … N/2).
inline Field<double> synth(const std::vector<cplx>& c, Eigen::Index n) {
  Field<double> v = Field<double>::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = 2 * pi * double(j) / double(n);
    double acc = c[0].real();
    for (Eigen::Index k = 1; k <= n / 2; ++k) {
      const double w = (2 * k == n) ? 1.0 : 2.0;
      acc += w * (c[static_cast<std::size_t>(k)] * std::polar(1.0, double(k) * x)).real();
    }
    v[j] = acc;
  }
  return v;
}

/// Random trigonometric polynomial with modes 0 … kmax, built pointwise.
inline Field<double> random_field(Eigen::Index n, long kmax, std::mt19937_64& rng, double amp = 1.0) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(kmax) + 1), b(static_cast<std::size_t>(kmax) + 1);
  for (long k = 0; k <= kmax; ++k) {
    a[static_cast<std::size_t>(k)] = amp * d(rng) / double(1 + k * k);
    b[static_cast<std::size_t>(k)] = (2 * k == n || k == 0) ? 0.0 : amp * d(rng) / double(1 + k * k);
  }
  return sample(n, [&](double x) {
    double s = 0;
    for (long k = 0; k <= kmax; ++k) {
      s += a[static_cast<std::size_t>(k)] * std::cos(double(k) * x) + b[static_cast<std::size_t>(k)] * std::sin(double(k) * x);
    }
    return s;
  });
}

inline State<double> random_state(Eigen::Index n, long kmax, std::mt19937_64& rng, double amp = 1.0) {
  Field<double> u = random_field(n, kmax, rng, amp);
  Field<double> p = random_field(n, kmax, rng, amp);
  return {u, p};
}

inline State<double> standard_state(Eigen::Index n) {
  return {sample(n, [](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); }), Field<double>::Zero(n)};
}

/// Dense periodic spectral differentiation matrices for even N (first
/// derivative with the Nyquist mode annihilated, second derivative keeping it).
inline Eigen::MatrixXd diff1(Eigen::Index n) {
  const double dx = 2 * pi / double(n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = 0.5 * sign / std::tan(double(i - j) * dx / 2);
    }
  }
  return D;
}

inline Eigen::MatrixXd diff2(Eigen::Index n) {
  const double dx = 2 * pi / double(n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        D(i, j) = -pi * pi / (3 * dx * dx) - 1.0 / 6.0;
      } else {
        const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        const double s = std::sin(double(i - j) * dx / 2);
        D(i, j) = -sign / (2 * s * s);
      }
    }
  }
  return D;
}

inline double l2(const Field<double>& v) { return std::sqrt(2 * pi * v.squaredNorm() / double(v.size())); }

inline double l2(const State<double>& U) {
  return std::sqrt(2 * pi * (U.u.squaredNorm() + U.p.squaredNorm()) / double(U.size()));
}

/// Classical RK4 on a callable, kept separate from the library's stepper.
template <typename Rhs>
State<double> rk4(Rhs&& f, State<double> U, double dt, long n) {
  for (long i = 0; i < n; ++i) {
    const State<double> k1 = f(U);
    const State<double> k2 = f(U + (dt / 2) * k1);
    const State<double> k3 = f(U + (dt / 2) * k2);
    const State<double> k4 = f(U + dt * k3);
    U += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return U;
}

}  // namespace oracle
