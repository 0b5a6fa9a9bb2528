#include <cstdio>
#include <fstream>

#include "vmod/experiments.hpp"

namespace vmod::experiments {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path, const char* header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << header << '\n';
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

void write_invariants_csv(const std::filesystem::path& path, const RunSeries& series) {
  auto out = open_csv(path, "t,energy,momentum,h_mod_energy,e_mod_var,iterations,blowup");
  for (const auto& r : series.rows) {
    out << format_number(r.t) << ',' << format_number(r.energy) << ',' << format_number(r.momentum) << ','
        << format_number(r.h_mod_energy) << ',' << format_number(r.e_mod_var) << ',' << r.iterations << ','
        << (r.blowup ? 1 : 0) << '\n';
  }
  finish(out, path);
}

void write_state_csv(const std::filesystem::path& path, const State<double>& U) {
  auto out = open_csv(path, "x,u,p");
  const Grid grid(U.size());
  const Field<double> x = grid.points<double>();
  for (Eigen::Index j = 0; j < U.size(); ++j) {
    out << format_number(x[j]) << ',' << format_number(U.u[j]) << ',' << format_number(U.p[j]) << '\n';
  }
  finish(out, path);
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceTable& table) {
  auto out = open_csv(path, "h,err_mod_ham,err_mod_var,err_linear_exact");
  for (const auto& r : table.rows) {
    out << format_number(r.h) << ',' << format_number(r.err_mod_ham) << ',' << format_number(r.err_mod_var) << ','
        << format_number(r.err_linear_exact) << '\n';
  }
  finish(out, path);
}

void write_dispersion_csv(const std::filesystem::path& path, const std::vector<DispersionRow>& rows) {
  auto out = open_csv(path, "k,k_exact,omega_ham,omega_var,a_k");
  for (const auto& r : rows) {
    out << r.k << ',' << format_number(r.k_exact) << ',' << format_number(r.omega_ham) << ','
        << format_number(r.omega_var) << ',' << format_number(r.a_k) << '\n';
  }
  finish(out, path);
}

}  // namespace vmod::experiments
