#include "vmod/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "vmod/experiments.hpp"

namespace vmod::cli {

namespace fs = std::filesystem;
using namespace vmod::experiments;

namespace {

json load_config(const std::string& path) {
  if (path.empty()) return {{"schema", 1}};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json series_summary(const RunSeries& s) {
  json j = {{"system", to_string(s.system)}, {"rows", s.rows.size()}, {"blowup", s.blowup}};
  j["blowup_time"] = nullable(s.blowup_time);
  if (!s.rows.empty()) {
    double max_dh = 0;
    for (const auto& r : s.rows) {
      if (!r.blowup) max_dh = std::max(max_dh, std::abs(r.energy - s.rows.front().energy));
    }
    j["max_abs_energy_change"] = max_dh;
  }
  return j;
}

struct Outcome {
  int code = kOk;
  json summary = json::object();
  std::vector<std::string> files;
};

Outcome do_simulate(const ExperimentSpec& spec, const fs::path& dir) {
  Outcome o;
  const RunSeries s = simulate(spec);
  write_invariants_csv(dir / "trajectory.csv", s);
  write_state_csv(dir / "final_state.csv", s.final_state);
  o.files = {"trajectory.csv", "final_state.csv"};
  o.summary = series_summary(s);
  if (s.blowup) o.code = kBlowup;
  return o;
}

Outcome do_converge(const ExperimentSpec& spec, const fs::path& dir) {
  Outcome o;
  const ConvergenceTable t = run_convergence(spec);
  write_convergence_csv(dir / "convergence.csv", t);
  o.files = {"convergence.csv"};
  o.summary = {{"slope_mod_ham", nullable(t.slope_mod_ham)}, {"slope_mod_var", nullable(t.slope_mod_var)}};
  json failures = json::array();
  for (const auto& r : t.rows) {
    if (!r.failure.empty()) failures.push_back({{"h", r.h}, {"error", r.failure}});
  }
  o.summary["failures"] = failures;
  if (t.any_failure()) o.code = kNonConvergence;
  return o;
}

Outcome do_energy_drift(const ExperimentSpec& spec, const fs::path& dir) {
  Outcome o;
  o.summary["runs"] = json::array();
  for (const RunSeries& s : run_energy_drift(spec)) {
    const std::string name = "energy_" + to_string(s.system) + ".csv";
    write_invariants_csv(dir / name, s);
    o.files.push_back(name);
    o.summary["runs"].push_back(series_summary(s));
    // The explicit integration of the Hamiltonian modified system is expected
    // to break down at these step sizes; nothing else is.
    if (s.blowup && s.system != System::mod_ham) o.code = kBlowup;
  }
  return o;
}

Outcome do_dispersion(const ExperimentSpec& spec, const fs::path& dir) {
  Outcome o;
  const auto rows = run_dispersion(spec);
  write_dispersion_csv(dir / "dispersion.csv", rows);
  o.files = {"dispersion.csv"};
  o.summary = {{"rows", rows.size()}};
  return o;
}

void write_meta(const fs::path& dir, Command cmd, const ExperimentSpec& spec, const Outcome& o,
                const std::string& error) {
  json meta = {{"library", "vmod"},
               {"version", version()},
               {"command", to_string(cmd)},
               {"exit_code", o.code},
               {"config", to_json(spec)},
               {"outputs", o.files},
               {"summary", o.summary}};
  if (!error.empty()) meta["error"] = error;
  std::ofstream f(dir / "meta.json");
  f << meta.dump(2) << '\n';
}

int execute(Command cmd, const std::string& config_path, const std::string& out_dir, std::ostream& out,
            std::ostream& err) {
  ExperimentSpec spec;
  fs::path dir(out_dir);
  try {
    spec = parse_spec(load_config(config_path), cmd);
    fs::create_directories(dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    err << "cannot create output directory: " << e.what() << '\n';
    return kConfigError;
  }

  Outcome o;
  std::string error;
  try {
    switch (cmd) {
      case Command::simulate: o = do_simulate(spec, dir); break;
      case Command::converge: o = do_converge(spec, dir); break;
      case Command::energy_drift: o = do_energy_drift(spec, dir); break;
      case Command::dispersion: o = do_dispersion(spec, dir); break;
    }
  } catch (const NonConvergence& e) {
    o.code = kNonConvergence;
    error = e.what();
  } catch (const ConfigError& e) {
    o.code = kConfigError;
    error = e.what();
  } catch (const std::exception& e) {
    o.code = kFailure;
    error = e.what();
  }
  write_meta(dir, cmd, spec, o, error);

  if (!error.empty()) err << to_string(cmd) << ": " << error << '\n';
  if (o.code == kBlowup) err << to_string(cmd) << ": blow-up detected\n";
  if (o.code == kNonConvergence && error.empty()) err << to_string(cmd) << ": fixed-point iteration did not converge\n";
  out << to_string(cmd) << ": wrote";
  for (const auto& f : o.files) out << ' ' << (dir / f).string();
  out << ' ' << (dir / "meta.json").string() << '\n';
  return o.code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Implicit midpoint and modified-equation experiments for the periodic semilinear wave equation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  struct Sub {
    Command cmd;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::simulate, "simulate", "evolve one system and record invariants"},
      {Command::converge, "converge", "midpoint versus modified equations over a list of step sizes"},
      {Command::energy_drift, "energy-drift", "long-time energy behaviour of several systems"},
      {Command::dispersion, "dispersion", "tabulate the linear dispersion relations"},
  };
  std::string config_path, out_dir = ".";
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", config_path, "JSON config (schema 1); defaults apply when omitted");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  for (const auto& s : subs) {
    if (app.got_subcommand(s.name)) return execute(s.cmd, config_path, out_dir, out, err);
  }
  return kConfigError;
}

}  // namespace vmod::cli
