#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sticky1d/convex.hpp"
#include "sticky1d/harness.hpp"
#include "sticky1d/metrics.hpp"
#include "sticky1d/presets.hpp"
#include "sticky1d/propagator.hpp"
#include "sticky1d/version.hpp"

namespace sticky1d {

using nlohmann::json;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp);
    os << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename to " + path);
}

std::string csv_row(std::initializer_list<double> vals) {
  std::string row;
  char buf[40];
  bool first = true;
  for (double v : vals) {
    if (!first) row += ',';
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    row += buf;
    first = false;
  }
  row += '\n';
  return row;
}

std::string eulerian_csv(const EulerianSolution& sol) {
  std::string out = "x,rho,u\n";
  for (int j = 0; j <= sol.phi.cells(); ++j)
    out += csv_row({sol.phi.node(j), sol.density.values[j], sol.velocity.values[j]});
  return out;
}

std::string lagrangian_csv(const GridFunction& psi, const GridFunction& v_pot) {
  std::string out = "m,psi,V\n";
  for (int j = 0; j <= psi.cells(); ++j)
    out += csv_row({psi.node(j), psi.values[j], v_pot.values[j]});
  return out;
}

std::string collisions_jsonl(const std::vector<CollisionEvent>& log) {
  std::string out;
  for (const auto& ev : log) {
    json line;
    line["t"] = ev.time;
    line["merged"] = json::array();
    for (const auto& [a, b] : ev.merged) line["merged"].push_back({a, b});
    out += line.dump();
    out += '\n';
  }
  return out;
}

json config_json(const RunConfig& cfg) {
  json j;
  j["mode"] = cfg.mode;
  j["initial"] = cfg.initial;
  j["out_dir"] = cfg.out_dir;
  j["N"] = cfg.n_particles;
  if (std::isfinite(cfg.eps)) j["eps"] = cfg.eps;
  if (std::isfinite(cfg.t_final)) j["t_final"] = cfg.t_final;
  j["times"] = cfg.times;
  j["grid_n"] = cfg.grid_n;
  j["seed"] = cfg.seed;
  if (!cfg.n_list.empty()) j["N_list"] = cfg.n_list;
  if (!cfg.eps_list.empty()) j["eps_list"] = cfg.eps_list;
  return j;
}

void write_manifest(const RunConfig& cfg, const json& metrics, const json& timings) {
  json m;
  m["config"] = config_json(cfg);
  m["metrics"] = metrics;
  m["timings_ms"] = timings;
  m["versions"] = {{"sticky1d", kVersion},
                   {"cli11", CLI11_VERSION},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  write_file_atomic((std::filesystem::path(cfg.out_dir) / "manifest.json").string(),
                    m.dump(2) + "\n");
}

void run_simulate(const RunConfig& cfg) {
  const double t0 = now_ms();
  const InitialData data = load_initial(cfg, cfg.eps);
  ParticleSystem sys = ParticleSystem::from_initial_data(data, cfg.n_particles);
  sys.advance_to(cfg.t_final);
  const XGrid grid = default_grid(data, cfg.t_final, cfg.grid_n);
  const GridFunction rho = sys.density_profile(grid.lo, grid.hi, grid.n);
  const GridFunction u = sys.velocity_profile(grid.lo, grid.hi, grid.n);

  std::string csv = "x,rho,u\n";
  for (int j = 0; j <= grid.n; ++j)
    csv += csv_row({rho.node(j), rho.values[j], u.values[j]});
  const std::filesystem::path dir(cfg.out_dir);
  write_file_atomic((dir / "solution.csv").string(), csv);
  write_file_atomic((dir / "collisions.jsonl").string(), collisions_jsonl(sys.collision_log()));

  json metrics;
  metrics["final_time"] = sys.time();
  metrics["clusters"] = sys.clusters().size();
  metrics["collision_events"] = sys.collision_log().size();
  metrics["mass"] = sys.total_mass();
  metrics["momentum"] = sys.momentum();
  write_manifest(cfg, metrics, {{"total", now_ms() - t0}});
}

void run_solve(const RunConfig& cfg, bool zero_pressure) {
  const double t0 = now_ms();
  InitialData data = load_initial(cfg, zero_pressure ? 0.0 : cfg.eps);
  if (zero_pressure) data.eps = 0.0;
  const LagrangianState lag = build_lagrangian(data, cfg.grid_n);
  const GridFunction psi_t = propagate({lag.psi, lag.v_potential, lag.eps}, cfg.t_final);
  const LagrangianState state{psi_t, lag.v_potential, lag.eps, cfg.t_final};
  const EulerianSolution sol = eulerian_solution(state, default_grid(data, cfg.t_final, cfg.grid_n));

  const std::filesystem::path dir(cfg.out_dir);
  write_file_atomic((dir / "solution.csv").string(), eulerian_csv(sol));
  write_file_atomic((dir / "lagrangian.csv").string(), lagrangian_csv(psi_t, lag.v_potential));

  json metrics;
  metrics["mass"] = integral(sol.density);
  double mom = 0.0;
  {
    GridFunction rho_u = sol.density;
    for (size_t i = 0; i < rho_u.values.size(); ++i) rho_u.values[i] *= sol.velocity.values[i];
    mom = integral(rho_u);
  }
  metrics["momentum"] = mom;
  metrics["max_density"] = sol.density.max_value();
  write_manifest(cfg, metrics, {{"total", now_ms() - t0}});
}

void run_compare(const RunConfig& cfg) {
  const double t0 = now_ms();
  const auto reports = compare_engines(cfg);
  // wall times go to the manifest so the report replays byte-identically
  std::string csv = "time,sup_psi,w1,sup_cumulative\n";
  double max_sup = 0.0, max_w1 = 0.0;
  json per_time = json::array();
  for (const auto& r : reports) {
    csv += csv_row({r.time, r.sup_psi, r.w1, r.sup_cumulative});
    max_sup = std::max(max_sup, r.sup_psi);
    max_w1 = std::max(max_w1, r.w1);
    per_time.push_back({{"t", r.time}, {"sim", r.sim_ms}, {"prop", r.prop_ms}});
  }
  write_file_atomic((std::filesystem::path(cfg.out_dir) / "report.csv").string(), csv);
  json metrics;
  metrics["max_sup_psi"] = max_sup;
  metrics["max_w1"] = max_w1;
  json timings;
  timings["total"] = now_ms() - t0;
  timings["engines"] = per_time;
  write_manifest(cfg, metrics, timings);
}

void run_converge(const RunConfig& cfg) {
  const double t0 = now_ms();
  const ConvergenceResult res = convergence_study(cfg);
  std::string csv = "N,error\n";
  char buf[40];
  for (const auto& [n, err] : res.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g\n", n, err);
    csv += buf;
  }
  write_file_atomic((std::filesystem::path(cfg.out_dir) / "convergence.csv").string(), csv);
  json metrics;
  metrics["slope"] = res.slope;
  write_manifest(cfg, metrics, {{"total", now_ms() - t0}});
}

void run_eps_sweep(const RunConfig& cfg) {
  const double t0 = now_ms();
  const EpsSweepResult res = eps_sweep(cfg);
  std::string csv = "eps,error\n";
  for (const auto& [e, err] : res.rows) csv += csv_row({e, err});
  write_file_atomic((std::filesystem::path(cfg.out_dir) / "eps_sweep.csv").string(), csv);
  std::vector<std::pair<double, double>> xy(res.rows.begin(), res.rows.end());
  json metrics;
  metrics["slope"] = loglog_slope(xy);
  write_manifest(cfg, metrics, {{"total", now_ms() - t0}});
}

void apply_config_file(const std::string& path, const CLI::App& app, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw config_error("config: cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  auto take = [&](const char* flag, const char* key, auto& field) {
    if (app.count(flag) == 0 && j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("--mode", "mode", cfg.mode);
  take("--initial", "initial", cfg.initial);
  take("--out-dir", "out_dir", cfg.out_dir);
  take("--N", "N", cfg.n_particles);
  take("--eps", "eps", cfg.eps);
  take("--t", "t_final", cfg.t_final);
  take("--times", "times", cfg.times);
  take("--grid-n", "grid_n", cfg.grid_n);
  take("--seed", "seed", cfg.seed);
  take("--N-list", "N_list", cfg.n_list);
  take("--eps-list", "eps_list", cfg.eps_list);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sticky1d: finite-size sticky particle simulator and continuum solver"};
  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  app.add_option("--mode", cfg.mode, "simulate|solve|solve-zp|compare|converge|eps-sweep");
  app.add_option("--initial", cfg.initial, "preset name or initial-data JSON file");
  app.add_option("--out-dir", cfg.out_dir, "output directory (created if missing)");
  app.add_option("--N", cfg.n_particles, "number of particles");
  app.add_option("--eps", cfg.eps, "particle medium density parameter (cluster density 1/eps)");
  app.add_option("--t", cfg.t_final, "final time");
  app.add_option("--times", cfg.times, "comma-separated output times")->delimiter(',');
  app.add_option("--grid-n", cfg.grid_n, "grid resolution (power of two in [2^6, 2^20])");
  app.add_option("--seed", cfg.seed, "seed for seeded presets");
  app.add_option("--N-list", cfg.n_list, "particle counts for converge mode")->delimiter(',');
  app.add_option("--eps-list", cfg.eps_list, "eps values for eps-sweep mode")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, app, cfg);
    validate(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.mode == "simulate")
      run_simulate(cfg);
    else if (cfg.mode == "solve")
      run_solve(cfg, false);
    else if (cfg.mode == "solve-zp")
      run_solve(cfg, true);
    else if (cfg.mode == "compare")
      run_compare(cfg);
    else if (cfg.mode == "converge")
      run_converge(cfg);
    else
      run_eps_sweep(cfg);
    return 0;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}

}  // namespace sticky1d
