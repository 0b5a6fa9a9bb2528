#pragma once

// Experiment drivers behind the `vmod` command line tool.  Everything here is
// instantiated for double.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "vmod/errors.hpp"
#include "vmod/potential.hpp"
#include "vmod/spectral.hpp"

namespace vmod::experiments {

using json = nlohmann::json;

enum class System { midpoint, mod_ham, mod_var, linear_exact };

std::string to_string(System s);
System system_from_string(const std::string& name);

enum class Command { simulate, converge, energy_drift, dispersion };

std::string to_string(Command c);

/// Thrown for malformed or out-of-range experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitSpec {
  std::string kind = "standard";  // standard | random | fourier
  json params = json::object();
};

/// Declarative description of a run.  Defaults depend on the command; see
/// default_spec().
struct ExperimentSpec {
  System system = System::midpoint;
  std::vector<System> systems;  // energy-drift only
  Eigen::Index N = 128;
  double h = 0.05;
  double T = 0.5;
  double rk4_dt = 0;  // 0 selects h/50
  std::string potential = "quartic:-0.1";
  InitSpec init;
  FixedPointConfig fixed_point;
  std::vector<double> h_list;
  std::uint64_t seed = 0;
  bool dealias = false;
  long sample_every = 1;
  long k_max = 0;  // dispersion; 0 selects N/2

  double effective_rk4_dt(double step) const { return rk4_dt > 0 ? rk4_dt : step / 50.0; }
};

ExperimentSpec default_spec(Command cmd);

/// Merges a schema-1 config document onto default_spec(cmd).  Throws ConfigError.
ExperimentSpec parse_spec(const json& config, Command cmd);

/// The resolved spec as a schema-1 document.
json to_json(const ExperimentSpec& spec);

/// Initial midpoint data (u, p) described by spec.init.
State<double> initial_state(const ExperimentSpec& spec);

/// Band-limited random field with modes 1 … kmax, coefficients uniform in
/// [−amplitude, amplitude]/(1 + k)², drawn from mt19937_64(seed).
Field<double> random_band_limited(Eigen::Index n, long kmax, double amplitude, std::uint64_t seed);

/// Sup-norm threshold above which a trajectory is declared blown up.
inline constexpr double kBlowupThreshold = 1e6;

bool is_blown_up(const State<double>& U);

struct InvariantRow {
  double t = 0;
  double energy = 0;
  double momentum = 0;
  double h_mod_energy = 0;
  double e_mod_var = 0;
  int iterations = 0;  // midpoint fixed-point iterations; 0 for RK4-driven systems
  bool blowup = false;
};

struct RunSeries {
  System system = System::midpoint;
  std::vector<InvariantRow> rows;
  bool blowup = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  State<double> final_state;  // in midpoint variables (u, p)
};

/// Evolves spec.system from initial_state(spec) up to time T.
RunSeries simulate(const ExperimentSpec& spec);

struct ConvergenceRow {
  double h = 0;
  double err_mod_ham = std::numeric_limits<double>::quiet_NaN();
  double err_mod_var = std::numeric_limits<double>::quiet_NaN();
  double err_linear_exact = std::numeric_limits<double>::quiet_NaN();  // zero potential only
  std::string failure;                                                 // empty on success
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope_mod_ham = std::numeric_limits<double>::quiet_NaN();
  double slope_mod_var = std::numeric_limits<double>::quiet_NaN();
  bool any_failure() const;
};

/// Midpoint-versus-modified discrepancy at the final time for every h in
/// spec.h_list.  The final time is n·h with n = round(T/h).
ConvergenceTable run_convergence(const ExperimentSpec& spec);

/// Runs every system in spec.systems over [0, T], recording invariants.
std::vector<RunSeries> run_energy_drift(const ExperimentSpec& spec);

struct DispersionRow {
  long k = 0;
  double k_exact = 0;
  double omega_ham = 0;
  double omega_var = 0;
  double a_k = 0;
};

std::vector<DispersionRow> run_dispersion(const ExperimentSpec& spec);

/// Least-squares slope of log(err) against log(h) over finite positive errors.
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err);

/// Least-squares slope of y against t.
double linear_fit_slope(const std::vector<double>& t, const std::vector<double>& y);

// CSV writers.  Numbers use 17 significant digits.
void write_invariants_csv(const std::filesystem::path& path, const RunSeries& series);
void write_state_csv(const std::filesystem::path& path, const State<double>& U);
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& table);
void write_dispersion_csv(const std::filesystem::path& path, const std::vector<DispersionRow>& rows);

std::string format_number(double v);

/// Library version string.
std::string version();

}  // namespace vmod::experiments
