#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "vmod/experiments.hpp"

namespace vmod::experiments {

std::string to_string(System s) {
  switch (s) {
    case System::midpoint: return "midpoint";
    case System::mod_ham: return "mod-ham";
    case System::mod_var: return "mod-var";
    case System::linear_exact: return "linear-exact";
  }
  return "unknown";
}

System system_from_string(const std::string& name) {
  if (name == "midpoint") return System::midpoint;
  if (name == "mod-ham") return System::mod_ham;
  if (name == "mod-var") return System::mod_var;
  if (name == "linear-exact") return System::linear_exact;
  throw ConfigError("unknown system '" + name + "' (expected midpoint | mod-ham | mod-var | linear-exact)");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::converge: return "converge";
    case Command::energy_drift: return "energy-drift";
    case Command::dispersion: return "dispersion";
  }
  return "unknown";
}

ExperimentSpec default_spec(Command cmd) {
  ExperimentSpec spec;
  switch (cmd) {
    case Command::simulate:
      break;
    case Command::converge:
      spec.N = 128;
      spec.T = 0.5;
      spec.h_list = {0.1, 0.07, 0.05, 0.035, 0.025};
      break;
    case Command::energy_drift:
      spec.N = 512;
      spec.h = 0.037;
      spec.T = 100;
      spec.rk4_dt = 0.025;
      spec.systems = {System::midpoint, System::mod_ham, System::mod_var};
      break;
    case Command::dispersion:
      spec.N = 512;
      spec.h = 0.037;
      break;
  }
  return spec;
}

namespace {

const std::set<std::string> kKnownKeys = {"schema", "system", "systems", "N", "h", "T", "rk4_dt", "potential",
                                          "init", "tol", "max_iter", "h_list", "seed", "dealias",
                                          "sample_every", "k_max"};

template <typename T>
T get_as(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string potential_from_json(const json& node) {
  if (node.is_string()) return node.get<std::string>();
  if (!node.is_object() || !node.contains("kind")) {
    throw ConfigError("config field 'potential' must be a string or an object with 'kind'");
  }
  const auto kind = get_as<std::string>(node, "kind");
  if (kind == "quartic") {
    const double c = node.contains("c") ? get_as<double>(node, "c") : -0.1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "quartic:%.15g", c);
    return buf;
  }
  return kind;
}

void validate(const ExperimentSpec& spec, Command cmd) {
  if (spec.N < 4 || spec.N % 2 != 0) throw ConfigError("N must be even and >= 4");
  if (!(spec.h > 0) || !std::isfinite(spec.h)) throw ConfigError("h must be > 0");
  if (!(spec.T > 0) || !std::isfinite(spec.T)) throw ConfigError("T must be > 0");
  if (!(spec.rk4_dt >= 0) || !std::isfinite(spec.rk4_dt)) throw ConfigError("rk4_dt must be >= 0");
  if (!(spec.fixed_point.tol > 0)) throw ConfigError("tol must be > 0");
  if (spec.fixed_point.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (spec.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (spec.k_max < 0) throw ConfigError("k_max must be >= 0");
  for (double h : spec.h_list) {
    if (!(h > 0) || !std::isfinite(h)) throw ConfigError("h_list entries must be > 0");
  }
  if (cmd == Command::converge && spec.h_list.size() < 2) throw ConfigError("h_list needs at least two entries");
  if (cmd == Command::energy_drift && spec.systems.empty()) throw ConfigError("systems must not be empty");
  try {
    (void)parse_potential<double>(spec.potential);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto& kind = spec.init.kind;
  if (kind != "standard" && kind != "random" && kind != "fourier") {
    throw ConfigError("unknown init kind '" + kind + "' (expected standard | random | fourier)");
  }
}

}  // namespace

ExperimentSpec parse_spec(const json& config, Command cmd) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  if (!config.contains("schema")) throw ConfigError("config is missing the 'schema' field");
  if (get_as<int>(config, "schema") != 1) throw ConfigError("unsupported config schema (expected 1)");

  ExperimentSpec spec = default_spec(cmd);
  if (config.contains("system")) spec.system = system_from_string(get_as<std::string>(config, "system"));
  if (config.contains("systems")) {
    spec.systems.clear();
    for (const auto& s : get_as<std::vector<std::string>>(config, "systems")) {
      spec.systems.push_back(system_from_string(s));
    }
  }
  if (config.contains("N")) spec.N = get_as<long>(config, "N");
  if (config.contains("h")) spec.h = get_as<double>(config, "h");
  if (config.contains("T")) spec.T = get_as<double>(config, "T");
  if (config.contains("rk4_dt")) spec.rk4_dt = get_as<double>(config, "rk4_dt");
  if (config.contains("potential")) spec.potential = potential_from_json(config.at("potential"));
  if (config.contains("init")) {
    const json& init = config.at("init");
    if (init.is_string()) {
      spec.init.kind = init.get<std::string>();
    } else if (init.is_object() && init.contains("kind")) {
      spec.init.kind = get_as<std::string>(init, "kind");
      if (init.contains("params")) spec.init.params = init.at("params");
    } else {
      throw ConfigError("config field 'init' must be a string or an object with 'kind'");
    }
  }
  if (config.contains("tol")) spec.fixed_point.tol = get_as<double>(config, "tol");
  if (config.contains("max_iter")) spec.fixed_point.max_iter = get_as<int>(config, "max_iter");
  if (config.contains("h_list")) spec.h_list = get_as<std::vector<double>>(config, "h_list");
  if (config.contains("seed")) spec.seed = get_as<std::uint64_t>(config, "seed");
  if (config.contains("dealias")) spec.dealias = get_as<bool>(config, "dealias");
  if (config.contains("sample_every")) spec.sample_every = get_as<long>(config, "sample_every");
  if (config.contains("k_max")) spec.k_max = get_as<long>(config, "k_max");
  validate(spec, cmd);
  return spec;
}

json to_json(const ExperimentSpec& spec) {
  json systems = json::array();
  for (System s : spec.systems) systems.push_back(to_string(s));
  return {{"schema", 1},
          {"system", to_string(spec.system)},
          {"systems", systems},
          {"N", spec.N},
          {"h", spec.h},
          {"T", spec.T},
          {"rk4_dt", spec.rk4_dt},
          {"potential", spec.potential},
          {"init", {{"kind", spec.init.kind}, {"params", spec.init.params}}},
          {"tol", spec.fixed_point.tol},
          {"max_iter", spec.fixed_point.max_iter},
          {"h_list", spec.h_list},
          {"seed", spec.seed},
          {"dealias", spec.dealias},
          {"sample_every", spec.sample_every},
          {"k_max", spec.k_max}};
}

Field<double> random_band_limited(Eigen::Index n, long kmax, double amplitude, std::uint64_t seed) {
  if (kmax < 1 || 2 * kmax >= n) throw ConfigError("random init: kmax must satisfy 1 <= kmax < N/2");
  std::mt19937_64 rng(seed);
  // Uniform in [−1, 1] from the raw 53 high bits; independent of the standard
  // library's distribution implementations.
  auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  Spectrum<double> c = Spectrum<double>::Zero(n / 2 + 1);
  for (long k = 1; k <= kmax; ++k) {
    const double scale = amplitude / ((1.0 + k) * (1.0 + k));
    const double re = uniform();
    const double im = uniform();
    c[k] = std::complex<double>(scale * re, scale * im);
  }
  return synthesize<double>(c, n);
}

State<double> initial_state(const ExperimentSpec& spec) {
  const Grid grid(spec.N);
  const auto& params = spec.init.params;
  if (spec.init.kind == "standard") {
    return {grid.sample([](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); }), Field<double>::Zero(spec.N)};
  }
  if (spec.init.kind == "random") {
    const long kmax = params.value("kmax", 8L);
    const double amplitude = params.value("amplitude", 1.0);
    return {random_band_limited(spec.N, kmax, amplitude, spec.seed),
            random_band_limited(spec.N, kmax, amplitude, spec.seed + 1)};
  }
  // fourier: {"u": [[k, a_cos, a_sin], ...], "p": [...]}
  auto build = [&](const char* key) {
    Field<double> v = Field<double>::Zero(spec.N);
    if (!params.contains(key)) return v;
    const Field<double> x = grid.points();
    for (const auto& mode : params.at(key)) {
      if (!mode.is_array() || mode.size() != 3) throw ConfigError("fourier init: modes must be [k, a_cos, a_sin]");
      const double k = mode[0].get<double>();
      const double ac = mode[1].get<double>();
      const double as = mode[2].get<double>();
      if (k < 0 || 2 * k > spec.N || k != std::floor(k)) throw ConfigError("fourier init: bad wave number");
      v += (ac * (k * x.array()).cos() + as * (k * x.array()).sin()).matrix();
    }
    return v;
  };
  return {build("u"), build("p")};
}

}  // namespace vmod::experiments
