#include <algorithm>
#include <cmath>
#include <future>

#include "vmod/experiments.hpp"
#include "vmod/initialization.hpp"
#include "vmod/linear_allorder.hpp"
#include "vmod/midpoint.hpp"
#include "vmod/modified_hamiltonian.hpp"
#include "vmod/modified_variational.hpp"
#include "vmod/rk4.hpp"
#include "vmod/wave_model.hpp"

namespace vmod::experiments {

namespace {

using StateD = State<double>;
using PotentialD = Potential<double>;

// Number of fixed steps covering [0, T] with step close to dt.
long steps_for(double T, double dt) {
  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  if (nearest >= 1 && std::abs(nearest - ratio) <= 1e-9 * ratio) return static_cast<long>(nearest);
  return std::max(1L, static_cast<long>(std::ceil(ratio)));
}

InvariantRow invariants(double t, const StateD& U, const PotentialD& pot, double h) {
  InvariantRow row;
  row.t = t;
  row.energy = energy(U, pot);
  row.momentum = momentum(U);
  row.h_mod_energy = h_mod_energy(U, pot, h);
  row.e_mod_var = e_mod_var(U, pot, h);
  return row;
}

StateD maybe_dealias(StateD U, bool on) { return on ? dealias(U) : U; }

// Native initial state of each system from midpoint data.
StateD to_native(System sys, const StateD& U0, const PotentialD& pot, double h, const FixedPointConfig& cfg) {
  switch (sys) {
    case System::midpoint:
    case System::mod_ham: return U0;
    case System::mod_var: return midpoint_to_variational(U0, pot, h, cfg);
    case System::linear_exact: return init_linear_allorder(U0, h);
  }
  return U0;
}

StateD from_native(System sys, const StateD& U, const PotentialD& pot, double h, const FixedPointConfig& cfg) {
  switch (sys) {
    case System::midpoint:
    case System::mod_ham: return U;
    case System::mod_var: return variational_to_midpoint(U, pot, h, cfg);
    case System::linear_exact: return linear_allorder_to_midpoint(U, h);
  }
  return U;
}

}  // namespace

bool is_blown_up(const StateD& U) {
  if (!U.u.allFinite() || !U.p.allFinite()) return true;
  return sup_norm(U) > kBlowupThreshold;
}

RunSeries simulate(const ExperimentSpec& spec) {
  const PotentialD pot = parse_potential<double>(spec.potential);
  const double h = spec.h;
  const FixedPointConfig& cfg = spec.fixed_point;
  const System sys = spec.system;

  RunSeries series;
  series.system = sys;
  const StateD U0 = maybe_dealias(initial_state(spec), spec.dealias);
  const StateD start = to_native(sys, U0, pot, h, cfg);
  StateD U = start;

  const bool rk4_driven = sys == System::mod_ham || sys == System::mod_var;
  const long n = rk4_driven ? steps_for(spec.T, spec.effective_rk4_dt(h)) : std::max(1L, std::lround(spec.T / h));
  const double dt = rk4_driven ? spec.T / static_cast<double>(n) : h;

  auto rhs_fn = [&](const StateD& V) {
    return sys == System::mod_ham ? rhs_mod_ham(V, pot, h) : rhs_mod_var(V, pot, h, cfg);
  };

  series.rows.push_back(invariants(0.0, U, pot, h));
  for (long i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    int iterations = 0;
    try {
      switch (sys) {
        case System::midpoint: {
          auto result = midpoint_step(U, pot, h, cfg);
          U = std::move(result.state);
          iterations = result.report.iterations;
          break;
        }
        case System::mod_ham:
        case System::mod_var: U = rk4_step(rhs_fn, U, dt); break;
        case System::linear_exact: U = exact_linear_evolve(start, t, h); break;
      }
    } catch (const NonConvergence& e) {
      if (!is_blown_up(U)) throw e.at_step(i);
      // Iterations fail once the state has left every bounded regime.
      U.u.setConstant(std::numeric_limits<double>::infinity());
    }
    if (spec.dealias) U = dealias(U);

    if (is_blown_up(U)) {
      InvariantRow row = invariants(t, U, pot, h);
      row.blowup = true;
      series.rows.push_back(row);
      series.blowup = true;
      series.blowup_time = t;
      break;
    }
    if (i % spec.sample_every == 0 || i == n) {
      InvariantRow row = invariants(t, U, pot, h);
      row.iterations = iterations;
      series.rows.push_back(row);
    }
  }
  series.final_state = series.blowup ? U : from_native(sys, U, pot, h, cfg);
  return series;
}

bool ConvergenceTable::any_failure() const {
  return std::any_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return !r.failure.empty(); });
}

namespace {

ConvergenceRow convergence_cell(const ExperimentSpec& spec, double h) {
  const PotentialD pot = parse_potential<double>(spec.potential);
  const FixedPointConfig& cfg = spec.fixed_point;
  ConvergenceRow row;
  row.h = h;
  try {
    const StateD U0 = maybe_dealias(initial_state(spec), spec.dealias);
    const long n = std::max(1L, std::lround(spec.T / h));
    const double t_final = static_cast<double>(n) * h;

    StateD Um = U0;
    for (long i = 0; i < n; ++i) Um = maybe_dealias(midpoint_step(Um, pot, h, cfg).state, spec.dealias);

    const long nr = steps_for(t_final, spec.effective_rk4_dt(h));
    const double dt = t_final / static_cast<double>(nr);
    auto integrate = [&](auto&& f, StateD U) {
      for (long i = 0; i < nr; ++i) U = maybe_dealias(rk4_step(f, U, dt), spec.dealias);
      return U;
    };

    const StateD Uh = integrate([&](const StateD& V) { return rhs_mod_ham(V, pot, h); }, U0);
    row.err_mod_ham = norm_l2(StateD(Uh - Um));

    const StateD V0 = midpoint_to_variational(U0, pot, h, cfg);
    const StateD V = integrate([&](const StateD& W) { return rhs_mod_var(W, pot, h, cfg); }, V0);
    row.err_mod_var = norm_l2(StateD(variational_to_midpoint(V, pot, h, cfg) - Um));

    if (pot.name == "zero") {
      const StateD L = exact_linear_evolve(init_linear_allorder(U0, h), t_final, h);
      row.err_linear_exact = norm_l2(StateD(linear_allorder_to_midpoint(L, h) - Um));
    }
  } catch (const NonConvergence& e) {
    row.failure = e.what();
  }
  return row;
}

}  // namespace

ConvergenceTable run_convergence(const ExperimentSpec& spec) {
  std::vector<std::future<ConvergenceRow>> cells;
  for (double h : spec.h_list) cells.push_back(std::async(std::launch::async, convergence_cell, spec, h));
  ConvergenceTable table;
  for (auto& cell : cells) table.rows.push_back(cell.get());

  std::vector<double> hs, ham, var;
  for (const auto& r : table.rows) {
    hs.push_back(r.h);
    ham.push_back(r.err_mod_ham);
    var.push_back(r.err_mod_var);
  }
  table.slope_mod_ham = loglog_slope(hs, ham);
  table.slope_mod_var = loglog_slope(hs, var);
  return table;
}

std::vector<RunSeries> run_energy_drift(const ExperimentSpec& spec) {
  std::vector<std::future<RunSeries>> runs;
  for (System s : spec.systems) {
    ExperimentSpec one = spec;
    one.system = s;
    runs.push_back(std::async(std::launch::async, [one] { return simulate(one); }));
  }
  std::vector<RunSeries> out;
  for (auto& r : runs) out.push_back(r.get());
  return out;
}

std::vector<DispersionRow> run_dispersion(const ExperimentSpec& spec) {
  const long k_max = spec.k_max > 0 ? spec.k_max : static_cast<long>(spec.N / 2);
  std::vector<DispersionRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max) + 1);
  for (long k = 0; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    rows.push_back({k, kd, omega_ham(kd, spec.h), omega_var(kd, spec.h), a_symbol(kd, spec.h)});
  }
  return rows;
}

double linear_fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = std::min(t.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mt = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sty = 0, stt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sty += (t[i] - mt) * (y[i] - my);
    stt += (t[i] - mt) * (t[i] - mt);
  }
  return stt > 0 ? sty / stt : std::numeric_limits<double>::quiet_NaN();
}

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(h.size(), err.size()); ++i) {
    if (h[i] > 0 && err[i] > 0 && std::isfinite(err[i])) {
      lx.push_back(std::log(h[i]));
      ly.push_back(std::log(err[i]));
    }
  }
  return linear_fit_slope(lx, ly);
}

std::string version() { return VMOD_VERSION; }

}  // namespace vmod::experiments
