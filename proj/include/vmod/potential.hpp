#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vmod/spectral.hpp"

namespace vmod {

/// Closed-form evaluator bundle for a smooth potential V and its derivatives
/// f = V′, f′, f″, f‴.  The semilinear wave equation reads ü = ∂ₓₓu + f(u).
template <typename Scalar>
struct Potential {
  using Fn = std::function<Scalar(Scalar)>;

  std::string name;
  Fn V;
  Fn f;
  Fn df;
  Fn d2f;
  Fn d3f;

  // Pointwise application to a field.
  Field<Scalar> V_of(const Field<Scalar>& u) const { return u.unaryExpr(V); }
  Field<Scalar> f_of(const Field<Scalar>& u) const { return u.unaryExpr(f); }
  Field<Scalar> df_of(const Field<Scalar>& u) const { return u.unaryExpr(df); }
  Field<Scalar> d2f_of(const Field<Scalar>& u) const { return u.unaryExpr(d2f); }
  Field<Scalar> d3f_of(const Field<Scalar>& u) const { return u.unaryExpr(d3f); }
};

/// V ≡ 0: the linear wave equation.
template <typename Scalar = double>
Potential<Scalar> zero_potential() {
  auto zero = [](Scalar) { return Scalar(0); };
  return {"zero", zero, zero, zero, zero, zero};
}

/// V(u) = c·u⁴.
template <typename Scalar = double>
Potential<Scalar> quartic_potential(Scalar c) {
  char label[48];
  std::snprintf(label, sizeof label, "quartic:%.15g", static_cast<double>(c));
  return {label,
          [c](Scalar u) { return c * u * u * u * u; },
          [c](Scalar u) { return Scalar(4) * c * u * u * u; },
          [c](Scalar u) { return Scalar(12) * c * u * u; },
          [c](Scalar u) { return Scalar(24) * c * u; },
          [c](Scalar) { return Scalar(24) * c; }};
}

/// V(u) = cos u (sine-Gordon family).
template <typename Scalar = double>
Potential<Scalar> cosine_potential() {
  using std::cos;
  using std::sin;
  return {"cosine",
          [](Scalar u) { return cos(u); },
          [](Scalar u) { return -sin(u); },
          [](Scalar u) { return -cos(u); },
          [](Scalar u) { return sin(u); },
          [](Scalar u) { return cos(u); }};
}

/// Parses "zero", "cosine" or "quartic:<c>".
template <typename Scalar = double>
Potential<Scalar> parse_potential(std::string_view spec) {
  if (spec == "zero") return zero_potential<Scalar>();
  if (spec == "cosine") return cosine_potential<Scalar>();
  constexpr std::string_view quartic = "quartic:";
  if (spec.substr(0, quartic.size()) == quartic) {
    const std::string coeff(spec.substr(quartic.size()));
    std::size_t used = 0;
    double c = 0;
    try {
      c = std::stod(coeff, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (coeff.empty() || used != coeff.size() || !std::isfinite(c)) {
      throw std::invalid_argument("bad quartic coefficient in potential spec '" + std::string(spec) + "'");
    }
    return quartic_potential<Scalar>(Scalar(c));
  }
  throw std::invalid_argument("unknown potential '" + std::string(spec) + "' (expected zero | quartic:c | cosine)");
}

}  // namespace vmod
