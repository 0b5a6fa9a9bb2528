#pragma once

// Fourier-spectral arithmetic on the periodic interval [0, 2π).
//
// A field is a real Eigen column vector of N samples v_j = v(x_j), x_j = j·2π/N.
// Its spectrum is the half-spectrum of true Fourier coefficients
//
//     v(x) = Σ_k v̂_k e^{ikx},   v̂_k = (1/N) Σ_j v_j e^{-ikx_j},   k = 0 … N/2,
//
// with v̂_{-k} = conj(v̂_k) implied.  Under this normalization Parseval reads
//
//     ∫ v w dx = 2π Σ_{k=-N/2+1}^{N/2} v̂_k conj(ŵ_k),
//
// and every norm below carries the same 2π factor.

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vmod {

template <typename Scalar>
using Field = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Spectrum = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Uniform periodic grid with N points on [0, 2π).  N must be even and ≥ 4;
/// represented wave numbers are k ∈ {−N/2+1, …, N/2}.
class Grid {
 public:
  explicit Grid(Eigen::Index n) : n_(n) {
    if (n < 4 || n % 2 != 0) {
      throw std::invalid_argument("Grid: N must be even and >= 4, got " + std::to_string(n));
    }
  }

  Eigen::Index size() const { return n_; }
  Eigen::Index nyquist() const { return n_ / 2; }
  double spacing() const { return 2.0 * std::numbers::pi / static_cast<double>(n_); }

  template <typename Scalar = double>
  Field<Scalar> points() const {
    Field<Scalar> x(n_);
    const Scalar dx = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n_);
    for (Eigen::Index j = 0; j < n_; ++j) x[j] = dx * Scalar(j);
    return x;
  }

  /// Samples fn(x_j) on the grid.
  template <typename Scalar = double, typename Fn>
  Field<Scalar> sample(Fn&& fn) const {
    Field<Scalar> x = points<Scalar>();
    return x.unaryExpr([&](Scalar xj) { return static_cast<Scalar>(fn(xj)); });
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Eigen::Index n_;
};

/// Position/momentum pair of a first-order system.  Both components live on
/// the same grid.
template <typename Scalar>
struct State {
  Field<Scalar> u;
  Field<Scalar> p;

  Eigen::Index size() const { return u.size(); }

  static State zero(Eigen::Index n) { return {Field<Scalar>::Zero(n), Field<Scalar>::Zero(n)}; }

  State& operator+=(const State& o) {
    u += o.u;
    p += o.p;
    return *this;
  }
  State& operator-=(const State& o) {
    u -= o.u;
    p -= o.p;
    return *this;
  }
  State& operator*=(Scalar a) {
    u *= a;
    p *= a;
    return *this;
  }
};

template <typename Scalar>
State<Scalar> operator+(State<Scalar> a, const State<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
State<Scalar> operator-(State<Scalar> a, const State<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
State<Scalar> operator*(Scalar s, State<Scalar> a) {
  return a *= s;
}
template <typename Scalar>
State<Scalar> operator*(State<Scalar> a, Scalar s) {
  return a *= s;
}

namespace detail {

inline void check_size(Eigen::Index n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("field size must be even and >= 4, got " + std::to_string(n));
  }
}

// One transform object per thread and scalar type; kissfft caches plans per N.
template <typename Scalar>
Eigen::FFT<Scalar>& fft_workspace() {
  thread_local Eigen::FFT<Scalar> fft = [] {
    Eigen::FFT<Scalar> f;
    f.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
    f.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    return f;
  }();
  return fft;
}

// Multiplicity of half-spectrum index k in the full two-sided sum.
inline double mode_weight(Eigen::Index k, Eigen::Index n) { return (k == 0 || 2 * k == n) ? 1.0 : 2.0; }

}  // namespace detail

/// Fourier coefficients v̂_0 … v̂_{N/2}.
template <typename Derived>
Spectrum<typename Derived::Scalar> spectrum(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  detail::check_size(n);
  const Field<Scalar> samples = v;
  Spectrum<Scalar> c(n / 2 + 1);
  detail::fft_workspace<Scalar>().fwd(c.data(), samples.data(), n);
  c /= Scalar(n);
  return c;
}

/// Inverse of spectrum(): synthesizes N real samples.  Imaginary parts of the
/// k = 0 and k = N/2 coefficients are ignored.
template <typename Scalar>
Field<Scalar> synthesize(const Spectrum<Scalar>& c, Eigen::Index n) {
  detail::check_size(n);
  if (c.size() != n / 2 + 1) throw std::invalid_argument("synthesize: spectrum length mismatch");
  Spectrum<Scalar> coeffs = c;
  coeffs[0] = std::complex<Scalar>(coeffs[0].real(), 0);
  coeffs[n / 2] = std::complex<Scalar>(coeffs[n / 2].real(), 0);
  Field<Scalar> v(n);
  detail::fft_workspace<Scalar>().inv(v.data(), coeffs.data(), n);
  return v;
}

/// v̂_k ↦ m(k)·v̂_k for k = 0 … N/2.  The multiplier may return a real or a
/// complex value; realness of the output is the caller's concern.
template <typename Derived, typename Multiplier>
Field<typename Derived::Scalar> fourier_multiply(const Eigen::MatrixBase<Derived>& v, Multiplier&& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  Spectrum<Scalar> c = spectrum(v);
  for (Eigen::Index k = 0; k <= n / 2; ++k) c[k] *= m(k);
  return synthesize<Scalar>(c, n);
}

/// Spectral first derivative.  The Nyquist mode is annihilated.
template <typename Derived>
Field<typename Derived::Scalar> dx(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index nyq = v.size() / 2;
  return fourier_multiply(v, [nyq](Eigen::Index k) {
    return k == nyq ? std::complex<Scalar>(0) : std::complex<Scalar>(0, Scalar(k));
  });
}

/// Spectral second derivative, multiplier −k² (Nyquist included).
template <typename Derived>
Field<typename Derived::Scalar> dxx(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  return fourier_multiply(v, [](Eigen::Index k) { return -Scalar(k) * Scalar(k); });
}

/// (1 − μ∂ₓₓ)⁻¹ z, i.e. ẑ_k / (1 + μk²).  Requires μ ≥ 0.
template <typename Derived>
Field<typename Derived::Scalar> inv_helmholtz(const Eigen::MatrixBase<Derived>& z, typename Derived::Scalar mu) {
  using Scalar = typename Derived::Scalar;
  if (!(mu >= Scalar(0))) throw std::invalid_argument("inv_helmholtz: mu must be nonnegative");
  if (mu == Scalar(0)) return z;
  return fourier_multiply(z, [mu](Eigen::Index k) { return Scalar(1) / (Scalar(1) + mu * Scalar(k) * Scalar(k)); });
}

/// Applies an even real Fourier multiplier sigma(k).  Throws
/// std::invalid_argument if sigma(−k) ≠ sigma(k) for a represented pair or if
/// sigma is not finite; an odd part would make the result complex.
template <typename Derived, typename Symbol>
Field<typename Derived::Scalar> apply_symbol(const Eigen::MatrixBase<Derived>& v, Symbol&& sigma) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  detail::check_size(n);
  Field<Scalar> table(n / 2 + 1);
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    const Scalar s = static_cast<Scalar>(sigma(k));
    if (!std::isfinite(static_cast<double>(s))) {
      throw std::invalid_argument("apply_symbol: symbol not finite at k = " + std::to_string(k));
    }
    if (k > 0 && k < n / 2) {
      const Scalar sm = static_cast<Scalar>(sigma(-k));
      const Scalar scale = std::max<Scalar>(Scalar(1), std::abs(s));
      if (std::abs(sm - s) > Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * scale) {
        throw std::invalid_argument("apply_symbol: symbol is not even at k = " + std::to_string(k));
      }
    }
    table[k] = s;
  }
  return fourier_multiply(v, [&table](Eigen::Index k) { return table[k]; });
}

/// 2/3-rule filter: zeroes every mode with |k| > N/3.
template <typename Derived>
Field<typename Derived::Scalar> dealias(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index cutoff = v.size() / 3;
  return fourier_multiply(v, [cutoff](Eigen::Index k) { return k > cutoff ? Scalar(0) : Scalar(1); });
}

template <typename Scalar>
State<Scalar> dealias(const State<Scalar>& U) {
  return {dealias(U.u), dealias(U.p)};
}

/// ∫ v dx over one period (trapezoidal rule, exact for represented modes).
template <typename Derived>
typename Derived::Scalar integral(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  return Scalar(2) * std::numbers::pi_v<Scalar> * v.mean();
}

/// L² pairing ∫ v w dx.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner(const Eigen::MatrixBase<DerivedA>& v, const Eigen::MatrixBase<DerivedB>& w) {
  using Scalar = typename DerivedA::Scalar;
  return Scalar(2) * std::numbers::pi_v<Scalar> * v.dot(w) / Scalar(v.size());
}

/// Weighted spectral sum 2π Σ_k weight(k)|v̂_k|² over all represented k.
template <typename Derived, typename Weight>
typename Derived::Scalar spectral_energy(const Eigen::MatrixBase<Derived>& v, Weight&& weight) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  const Spectrum<Scalar> c = spectrum(v);
  Scalar acc = 0;
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    acc += Scalar(detail::mode_weight(k, n)) * static_cast<Scalar>(weight(k)) * std::norm(c[k]);
  }
  return Scalar(2) * std::numbers::pi_v<Scalar> * acc;
}

template <typename Derived>
typename Derived::Scalar norm_l2(const Eigen::MatrixBase<Derived>& v) {
  using std::sqrt;
  return sqrt(inner(v, v));
}

/// Sobolev norm with squared weight 1 + |k|^{2s}.
template <typename Derived>
typename Derived::Scalar norm_hs(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar s) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  using std::sqrt;
  return sqrt(spectral_energy(v, [s](Eigen::Index k) {
    return Scalar(1) + (k == 0 ? Scalar(0) : pow(Scalar(k), Scalar(2) * s));
  }));
}

/// h-weighted energy norm with squared weight 1 + h²k²/6.
template <typename Derived>
typename Derived::Scalar norm_h1h(const Eigen::MatrixBase<Derived>& v, typename Derived::Scalar h) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  const Scalar mu = h * h / Scalar(6);
  return sqrt(spectral_energy(v, [mu](Eigen::Index k) { return Scalar(1) + mu * Scalar(k) * Scalar(k); }));
}

/// Product norm sqrt(‖u‖² + ‖p‖²) on L² × L².
template <typename Scalar>
Scalar norm_l2(const State<Scalar>& U) {
  using std::sqrt;
  return sqrt(inner(U.u, U.u) + inner(U.p, U.p));
}

template <typename Scalar>
Scalar sup_norm(const State<Scalar>& U) {
  return std::max(U.u.cwiseAbs().maxCoeff(), U.p.cwiseAbs().maxCoeff());
}

/// ∫ (∂ₓv)² dx evaluated as −∫ v ∂ₓₓv, i.e. 2π Σ k²|v̂_k|² including Nyquist.
/// Consistent with dxx, so gradient energies are conserved by flows built on it.
template <typename Derived>
typename Derived::Scalar dirichlet_energy(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  return spectral_energy(v, [](Eigen::Index k) { return Scalar(k) * Scalar(k); });
}

}  // namespace vmod
