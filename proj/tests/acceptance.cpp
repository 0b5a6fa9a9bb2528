// Acceptance suite: one PASS/FAIL line per primary criterion.  Exit status is
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "vmod/experiments.hpp"
#include "vmod/vmod.hpp"

using namespace vmod;
using namespace vmod::experiments;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

void fourth_order_gap() {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceTable t = run_convergence(default_spec(Command::converge));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = !t.any_failure() && std::abs(t.slope_mod_ham - 4) <= 0.3 && std::abs(t.slope_mod_var - 4) <= 0.3 &&
                  secs <= 120;
  report(1, "fourth-order gap", ok,
         fmt("slope mod-ham %.4f, slope mod-var %.4f, runtime %.1f s", t.slope_mod_ham, t.slope_mod_var, secs));
}

void energy_stability_contrast() {
  const ExperimentSpec spec = default_spec(Command::energy_drift);
  bool ham_blowup = false, var_ok = false, mid_ok = false;
  double ham_time = NAN, var_dev = NAN, mid_slope = NAN, var_end = NAN, mid_end = NAN;
  for (const RunSeries& s : run_energy_drift(spec)) {
    if (s.system == System::mod_ham) {
      ham_blowup = s.blowup && s.blowup_time < 10;
      ham_time = s.blowup_time;
    } else if (s.system == System::mod_var) {
      const double e0 = s.rows.front().e_mod_var, h0 = std::abs(s.rows.front().energy);
      var_dev = 0;
      for (const auto& r : s.rows) var_dev = std::max(var_dev, std::abs(r.e_mod_var - e0) / h0);
      var_end = s.rows.back().t;
      var_ok = !s.blowup && var_end >= spec.T - 1e-9 && var_dev <= 1e-4;
    } else if (s.system == System::midpoint) {
      std::vector<double> t, e;
      for (const auto& r : s.rows) {
        t.push_back(r.t);
        e.push_back(r.energy);
      }
      mid_slope = linear_fit_slope(t, e);
      mid_end = s.rows.back().t;
      mid_ok = !s.blowup && mid_end >= spec.T - spec.h && std::abs(mid_slope) <= 1e-6;
    }
  }
  report(2, "energy stability contrast", ham_blowup && var_ok && mid_ok,
         fmt("mod-ham blow-up at t=%.3f; mod-var to t=%.2f, max rel. energy deviation %.3e; midpoint to t=%.2f, "
             "energy slope %.3e",
             ham_time, var_end, var_dev, mid_end, mid_slope));
}

void linear_exactness() {
  const Eigen::Index n = 64;
  const double h = 0.05;
  const long steps = 1000;
  const FixedPointConfig cfg{1e-13, 100};
  const State<double> U0{random_band_limited(n, 24, 1.0, 2024), random_band_limited(n, 24, 1.0, 2025)};
  State<double> U = U0;
  for (long i = 0; i < steps; ++i) U = midpoint_step(U, zero_potential(), h, cfg).state;
  const State<double> L = exact_linear_evolve(init_linear_allorder(U0, h), steps * h, h);

  const Spectrum<double> um = spectrum(U.u), ul = spectrum(L.u);
  const Spectrum<double> u0 = spectrum(U0.u), p0 = spectrum(U0.p);
  // Mode amplitude of the all-order flow; relative errors are taken against it.
  std::vector<double> amp(static_cast<std::size_t>(n / 2 + 1));
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    const double a = k == 0 ? 1.0 : a_symbol(double(k), h);
    amp[static_cast<std::size_t>(k)] = std::sqrt(std::norm(u0[k]) + std::norm(p0[k]) / (a * a));
  }
  const double amp_max = *std::max_element(amp.begin(), amp.end());
  double worst = 0;
  int populated = 0;
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    // Unpopulated modes carry only round-off; measure them against the largest mode.
    const bool filled = amp[static_cast<std::size_t>(k)] > 1e-12 * amp_max;
    populated += filled;
    worst = std::max(worst, std::abs(um[k] - ul[k]) / (filled ? amp[static_cast<std::size_t>(k)] : amp_max));
  }
  report(3, "linear midpoint/all-order exactness", worst <= 1e-9,
         fmt("max per-mode relative error %.3e after %ld steps (%d of %ld modes populated)", worst, steps, populated,
             static_cast<long>(n / 2 + 1)));
}

void momentum_conservation() {
  const Eigen::Index n = 64;
  const FixedPointConfig cfg{1e-12, 100};
  const auto pot = quartic_potential(-0.1);
  const State<double> U0{random_band_limited(n, 8, 2.0, 7), random_band_limited(n, 8, 2.0, 8)};
  const double j0 = momentum(U0);
  double worst = 0;
  midpoint_evolve(U0, pot, 0.05, 1000, cfg,
                  [&](long, const State<double>& V, const StepReport&) { worst = std::max(worst, std::abs(momentum(V) - j0)); });
  report(4, "momentum conservation", worst <= 100 * cfg.tol,
         fmt("J(0)=%.6f, max |J(t)-J(0)| = %.3e over 1000 steps (bound %.1e)", j0, worst, 100 * cfg.tol));
}

void k_operator_bound() {
  const Eigen::Index n = 64;
  const double h = 0.05;
  const auto pot = quartic_potential(-0.1);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int holds = 0;
  double worst_ratio = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Field<double> u = random_band_limited(n, 16, 1.0, rng());
    u *= 2.0 * unit(rng) / norm_hs(u, 1.0);  // ‖u‖_H¹ ≤ 2
    const Field<double> z = random_band_limited(n, 16, 1.0 + 10 * unit(rng), rng());
    const double c = pot.df_of(u).cwiseAbs().maxCoeff() / 6;
    const Field<double> v = solve_K(u, z, pot, h);
    const double ratio = norm_l2(v) / (norm_l2(z) / (1 - c * h * h));
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio <= 1) ++holds;
  }
  report(5, "K-operator L2 bound", holds == 100,
         fmt("%d/100 pairs satisfy the bound; max |v|/bound = %.6f", holds, worst_ratio));
}

void frequency_bounds() {
  bool ok = true;
  double worst_var = 0, worst_a = 0;
  for (double h : {0.1, 0.037, 0.01}) {
    std::vector<double> ks;
    for (double k = 0; k < 1000; ++k) ks.push_back(k);
    for (double k = 1000; k < 1e6; k *= 1.001) ks.push_back(k);
    ks.push_back(1e6);
    for (double k : ks) {
      const double wv = omega_var(k, h) * h / std::sqrt(6.0);
      const double wa = a_symbol(k, h) * h / std::numbers::pi;
      worst_var = std::max(worst_var, wv);
      worst_a = std::max(worst_a, wa);
      ok = ok && wv <= 1 && wa <= 1;
    }
  }
  report(6, "frequency bounds", ok,
         fmt("max omega_var*h/sqrt(6) = %.9f, max a*h/pi = %.9f for h in {0.1, 0.037, 0.01}, k <= 1e6", worst_var,
             worst_a));
}

void phi_near_identity() {
  const auto inf = phi_coeffs_at_infinity<double>(2);
  double worst_phi = 0, max_c1 = 0, max_c2 = 0;
  for (double x = 0; x <= 1e4; x = x < 10 ? x + 0.001 : x * 1.001) {
    worst_phi = std::max(worst_phi, std::abs(phi_symbol(SymbolPoint<double>{0.0, x}) - 1));
    const auto c = phi_coeffs(x, 2);
    max_c1 = std::max(max_c1, std::abs(c[1]));
    max_c2 = std::max(max_c2, std::abs(c[2]));
  }
  const bool ok = worst_phi <= 1e-10 && max_c1 <= 1.1 * inf[1] && max_c2 <= 1.1 * inf[2];
  report(7, "phi near-identity and bounded coefficients", ok,
         fmt("max |phi(0,x)-1| = %.2e; max|c1| = %.6f (plateau %.6f); max|c2| = %.6f (plateau %.6f)", worst_phi,
             max_c1, inf[1], max_c2, inf[2]));
}

void drift_ratios() {
  const Eigen::Index n = 32;
  const double h = 0.05;
  const auto pot = quartic_potential(-0.1);
  ExperimentSpec spec = default_spec(Command::simulate);
  spec.N = n;
  const State<double> U0 = initial_state(spec);

  const auto rk4_ratio = [&](auto&& f, auto&& E) {
    const auto drift = [&](double dt) {
      return std::abs(E(rk4_evolve(f, U0, dt, std::lround(1.0 / dt))) - E(U0));
    };
    return drift(0.01) / drift(0.005);
  };
  const double r_ham = rk4_ratio([&](const State<double>& V) { return rhs_mod_ham(V, pot, h); },
                                 [&](const State<double>& V) { return h_mod_energy(V, pot, h); });
  const double r_var = rk4_ratio([&](const State<double>& V) { return rhs_mod_var(V, pot, h); },
                                 [&](const State<double>& V) { return e_mod_var(V, pot, h); });

  State<double> S = U0;
  S.p = Grid(n).sample<double>([](double x) { return std::cos(x) + 0.3 * std::sin(2 * x); });
  const auto momentum_defect = [&](double hh) {
    return norm_l2(Field<double>(p_from_udot(S.u, udot_from_p(S.u, S.p, pot, hh), pot, hh) - S.p));
  };
  const auto pipeline_defect = [&](double hh) {
    return norm_l2(State<double>(variational_to_midpoint(midpoint_to_variational(S, pot, hh), pot, hh) - S));
  };
  const double r_mom = momentum_defect(0.1) / momentum_defect(0.05);
  const double r_pipe = pipeline_defect(0.1) / pipeline_defect(0.05);
  const bool ok = in_range(r_ham, 10, 24) && in_range(r_var, 10, 24) && in_range(r_mom, 10, 24) && in_range(r_pipe, 10, 24);
  report(8, "drift and defect ratios", ok,
         fmt("RK4 h_mod_energy %.2f, RK4 e_mod_var %.2f, momentum map round trip %.2f, full pipeline round trip %.2f",
             r_ham, r_var, r_mom, r_pipe));
}

}  // namespace

int main() {
  std::printf("vmod %s acceptance suite\n", version().c_str());
  const std::pair<const char*, void (*)()> criteria[] = {
      {"fourth-order gap", fourth_order_gap},       {"energy stability contrast", energy_stability_contrast},
      {"linear exactness", linear_exactness},       {"momentum conservation", momentum_conservation},
      {"K-operator bound", k_operator_bound},       {"frequency bounds", frequency_bounds},
      {"phi near-identity", phi_near_identity},     {"drift ratios", drift_ratios},
  };
  int id = 1;
  for (const auto& [name, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, name, false, std::string("exception: ") + e.what());
    }
    ++id;
  }
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
