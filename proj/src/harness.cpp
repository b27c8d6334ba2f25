#include "sticky1d/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sticky1d/convex.hpp"
#include "sticky1d/metrics.hpp"
#include "sticky1d/presets.hpp"
#include "sticky1d/propagator.hpp"

namespace sticky1d {

using nlohmann::json;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> effective_times(const RunConfig& cfg) {
  if (!cfg.times.empty()) return cfg.times;
  return {cfg.t_final};
}

std::vector<int> effective_n_list(const RunConfig& cfg) {
  if (!cfg.n_list.empty()) return cfg.n_list;
  return {64, 128, 256, 512, 1024, 2048};
}

std::vector<double> effective_eps_list(const RunConfig& cfg) {
  if (!cfg.eps_list.empty()) return cfg.eps_list;
  return {0.1, 0.05, 0.025};
}

}  // namespace

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> modes = {"simulate", "solve",    "solve-zp",
                                                 "compare",  "converge", "eps-sweep"};
  if (std::find(modes.begin(), modes.end(), cfg.mode) == modes.end())
    throw config_error("mode: expected one of simulate|solve|solve-zp|compare|converge|eps-sweep");
  if (!is_power_of_two(cfg.grid_n) || cfg.grid_n < 64 || cfg.grid_n > (1 << 20))
    throw config_error("grid_n: must be a power of two between 2^6 and 2^20");
  if (cfg.initial.empty()) throw config_error("initial: missing initial data name or file");

  const bool needs_n = cfg.mode == "simulate" || cfg.mode == "compare";
  const bool needs_eps =
      cfg.mode == "simulate" || cfg.mode == "solve" || cfg.mode == "compare" || cfg.mode == "converge";
  const bool needs_t = cfg.mode != "compare" || cfg.times.empty();
  if (needs_n && cfg.n_particles < 1) throw config_error("N: missing or < 1");
  if (needs_eps && !(cfg.eps >= 0.0)) throw config_error("eps: missing or negative");
  if (needs_t && !(cfg.t_final >= 0.0)) throw config_error("t_final: missing or negative");
  for (size_t i = 0; i + 1 < cfg.times.size(); ++i)
    if (!(cfg.times[i] < cfg.times[i + 1]))
      throw config_error("times: must be strictly increasing");
  if (!cfg.times.empty() && !(cfg.times.front() >= 0.0))
    throw config_error("times: must be nonnegative");
  for (double e : cfg.eps_list)
    if (!(e > 0.0)) throw config_error("eps_list: entries must be positive");
  for (int n : cfg.n_list)
    if (n < 1) throw config_error("N_list: entries must be >= 1");
}

InitialData load_initial(const RunConfig& cfg, double eps) {
  const auto& names = preset_names();
  if (std::find(names.begin(), names.end(), cfg.initial) != names.end())
    return make_preset(cfg.initial, eps, cfg.grid_n, cfg.seed);
  if (!std::filesystem::exists(cfg.initial))
    throw config_error("initial: '" + cfg.initial + "' is neither a preset nor a file");
  std::ifstream is(cfg.initial);
  json j;
  is >> j;
  try {
    const double lo = j.at("x_lo").get<double>();
    const double hi = j.at("x_hi").get<double>();
    auto rho = j.at("density").get<std::vector<double>>();
    auto u = j.at("velocity").get<std::vector<double>>();
    InitialData data{GridFunction(lo, hi, std::move(rho)), GridFunction(lo, hi, std::move(u)),
                     eps};
    validate(data);
    return data;
  } catch (const json::exception& e) {
    throw config_error(std::string("initial: bad file format: ") + e.what());
  }
}

std::vector<ComparisonReport> compare_engines(const RunConfig& cfg) {
  const InitialData data = load_initial(cfg, cfg.eps);
  ParticleSystem sys = ParticleSystem::from_initial_data(data, cfg.n_particles);
  const GridFunction psi0 = sys.psi_tilde(cfg.grid_n);
  const GridFunction v_pot = sys.velocity_potential(cfg.grid_n);
  const double span = data.density.hi - data.density.lo;

  std::vector<ComparisonReport> out;
  for (double t : effective_times(cfg)) {
    ComparisonReport r;
    r.time = t;

    double t0 = now_ms();
    sys.advance_to(t);
    const GridFunction psi_sim = sys.psi_tilde(cfg.grid_n);
    r.sim_ms = now_ms() - t0;

    t0 = now_ms();
    const GridFunction psi_prop = propagate({psi0, v_pot, cfg.eps}, t);
    r.prop_ms = now_ms() - t0;

    r.sup_psi = sup_diff(psi_sim, psi_prop);

    const GridFunction x_prop = derivative(psi_prop);
    const double lo = std::min(sys.clusters().front().left_edge, x_prop.min_value()) - 0.05 * span;
    const double hi = std::max(sys.clusters().back().right_edge(), x_prop.max_value()) + 0.05 * span;
    const XGrid grid{lo, hi, cfg.grid_n};
    const GridFunction m_sim = sys.cumulative_mass(grid.lo, grid.hi, grid.n);
    const GridFunction m_prop = mass_from_lagrangian(psi_prop, grid);
    r.w1 = w1_distance(m_sim, m_prop);
    r.sup_cumulative = sup_diff(m_sim, m_prop);
    out.push_back(r);
  }
  return out;
}

ConvergenceResult convergence_study(const RunConfig& cfg) {
  const InitialData data = load_initial(cfg, cfg.eps);
  const double t = cfg.t_final;
  const XGrid grid = default_grid(data, t, cfg.grid_n);
  const EulerianSolution cont = solve_finite_size(data, t, cfg.grid_n, grid);

  ConvergenceResult res;
  std::vector<std::pair<double, double>> xy;
  for (int n : effective_n_list(cfg)) {
    ParticleSystem sys = ParticleSystem::from_initial_data(data, n);
    sys.advance_to(t);
    const GridFunction phi_n = sys.phi_tilde(grid.lo, grid.hi, grid.n);
    const double err = sup_diff(phi_n, cont.phi);
    res.rows.emplace_back(n, err);
    xy.emplace_back(static_cast<double>(n), err);
  }
  res.slope = loglog_slope(xy);
  return res;
}

EpsSweepResult eps_sweep(const RunConfig& cfg) {
  const double t = cfg.t_final;
  const InitialData data0 = load_initial(cfg, 0.0);
  const XGrid grid = default_grid(data0, t, cfg.grid_n);
  const EulerianSolution zp = solve_zero_pressure(data0, t, cfg.grid_n, grid);
  const GridFunction m0 = derivative(zp.phi);

  EpsSweepResult res;
  for (double e : effective_eps_list(cfg)) {
    const InitialData data = load_initial(cfg, e);
    const EulerianSolution sol = solve_finite_size(data, t, cfg.grid_n, grid);
    res.rows.emplace_back(e, l1_diff(derivative(sol.phi), m0));
  }
  return res;
}

double loglog_slope(const std::vector<std::pair<double, double>>& xy) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0)) continue;
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) return 0.0;
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace sticky1d
