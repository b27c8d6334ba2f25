#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sticky1d/continuum.hpp"
#include "sticky1d/particles.hpp"

namespace sticky1d {

/// Bad or missing configuration; maps to CLI exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode;
  std::string initial;            // preset name or JSON file path
  std::string out_dir = ".";
  int n_particles = 0;            // 0 = unset
  double eps = std::numeric_limits<double>::quiet_NaN();  // NaN = unset
  double t_final = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> times;
  int grid_n = 4096;
  uint64_t seed = 1;
  std::vector<int> n_list;        // converge mode; default 64..2048
  std::vector<double> eps_list;   // eps-sweep mode; default {0.1, 0.05, 0.025}
};

/// Checks mode-specific required fields; throws config_error naming the field.
void validate(const RunConfig& cfg);

/// Resolves `initial` into data: a known preset name, else a JSON file with
/// {"x_lo", "x_hi", "density": [...], "velocity": [...]}.
InitialData load_initial(const RunConfig& cfg, double eps);

struct ComparisonReport {
  double time = 0.0;
  double sup_psi = 0.0;         // ||psi~ - psi||_inf on the mass grid
  double w1 = 0.0;              // int |M_sim - M_prop| dx
  double sup_cumulative = 0.0;  // ||M_sim - M_prop||_inf
  double sim_ms = 0.0;
  double prop_ms = 0.0;
};

/// Runs the simulator and the propagator from the same finite-N initial
/// potential (psi~ at t=0 and the particle-velocity step potential) and
/// reports the discrepancies at each requested time.
std::vector<ComparisonReport> compare_engines(const RunConfig& cfg);

struct ConvergenceResult {
  std::vector<std::pair<int, double>> rows;  // (N, sup |phi~_N - phi|)
  double slope = 0.0;                        // log-log least-squares fit
};

/// Simulator cumulative potential against the continuum solution at t_final,
/// for each N in cfg.n_list.
ConvergenceResult convergence_study(const RunConfig& cfg);

struct EpsSweepResult {
  std::vector<std::pair<double, double>> rows;  // (eps, L1 distance of cumulatives)
};

/// ||M_eps(., t) - M_0(., t)||_L1 for each eps in cfg.eps_list, with M_0 the
/// zero-pressure hull solution of the same initial profile.
EpsSweepResult eps_sweep(const RunConfig& cfg);

/// Slope of a least-squares line through (log x, log y); pairs with y <= 0 are
/// skipped.
double loglog_slope(const std::vector<std::pair<double, double>>& xy);

/// Full command-line entry point. Exit codes: 0 success, 2 configuration
/// error, 3 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace sticky1d
