#include "sticky1d/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sticky1d/random.hpp"

namespace sticky1d {
namespace {

constexpr double kPi = 3.14159265358979323846;

double ramp_block(double x, double a, double b, double w) {
  const double up = std::clamp((x - a) / w, 0.0, 1.0);
  const double down = std::clamp((b - x) / w, 0.0, 1.0);
  return up * down;
}

void normalize(GridFunction& rho) {
  const double mass = integral(rho);
  if (!(mass > 0.0)) throw std::runtime_error("preset: degenerate density");
  for (double& v : rho.values) v /= mass;
}

InitialData finish(GridFunction rho, GridFunction u, double eps) {
  normalize(rho);
  InitialData data{std::move(rho), std::move(u), eps};
  validate(data);
  return data;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "uniform-block", "two-block-headon", "riemann-shear",
      "triangular",    "random-bump",      "point-collision"};
  return names;
}

InitialData make_preset(const std::string& name, double eps, int grid_n, uint64_t seed) {
  if (grid_n < 16) throw std::invalid_argument("make_preset: need grid_n >= 16");
  const double w = 8.0 * 3.0 / grid_n;  // ramp width, a few cells of a span-3 grid

  if (name == "uniform-block") {
    auto rho = GridFunction::sample(-0.5, 1.5, grid_n,
                                    [&](double x) { return ramp_block(x, 0.0, 1.0, w); });
    auto u = GridFunction::sample(-0.5, 1.5, grid_n, [](double) { return 1.0; });
    return finish(std::move(rho), std::move(u), eps);
  }
  if (name == "two-block-headon") {
    auto rho = GridFunction::sample(-1.5, 1.5, grid_n, [&](double x) {
      return ramp_block(x, -1.0, -0.2, w) + ramp_block(x, 0.2, 1.0, w);
    });
    auto u = GridFunction::sample(-1.5, 1.5, grid_n,
                                  [](double x) { return -std::clamp(x / 0.05, -1.0, 1.0); });
    return finish(std::move(rho), std::move(u), eps);
  }
  if (name == "riemann-shear") {
    auto rho = GridFunction::sample(-1.5, 1.5, grid_n,
                                    [&](double x) { return ramp_block(x, -1.0, 1.0, w); });
    auto u = GridFunction::sample(-1.5, 1.5, grid_n,
                                  [](double x) { return -std::clamp(x / 0.02, -1.0, 1.0); });
    return finish(std::move(rho), std::move(u), eps);
  }
  if (name == "triangular") {
    auto rho = GridFunction::sample(-1.25, 1.25, grid_n,
                                    [](double x) { return std::max(0.0, 1.0 - std::abs(x)); });
    auto u = GridFunction::sample(-1.25, 1.25, grid_n, [](double x) { return -x; });
    return finish(std::move(rho), std::move(u), eps);
  }
  if (name == "point-collision") {
    auto rho = GridFunction::sample(-1.5, 1.5, grid_n, [&](double x) {
      const double wn = std::min(w, 0.02);
      return ramp_block(x, -0.55, -0.45, wn) + ramp_block(x, 0.45, 0.55, wn);
    });
    auto u = GridFunction::sample(-1.5, 1.5, grid_n,
                                  [](double x) { return -std::clamp(x / 0.05, -1.0, 1.0); });
    return finish(std::move(rho), std::move(u), eps);
  }
  if (name == "random-bump") {
    SplitMix64 rng(0x9d2c5680cafef00dULL ^ seed);
    struct Bump {
      double a, c, w;
    };
    std::vector<Bump> bumps(4);
    for (auto& b : bumps) {
      b.a = rng.uniform(0.3, 1.0);
      b.c = rng.uniform(-1.0, 1.0);
      b.w = rng.uniform(0.15, 0.5);
    }
    double stretch = 1.0;
    GridFunction rho;
    for (int attempt = 0; attempt < 8; ++attempt) {
      rho = GridFunction::sample(-1.5, 1.5, grid_n, [&](double x) {
        double s = 0.0;
        for (const auto& b : bumps) {
          const double y = (x - b.c * stretch) / (b.w * stretch);
          if (std::abs(y) < 1.0) {
            const double c = std::cos(0.5 * kPi * y);
            s += b.a / stretch * c * c;
          }
        }
        return s;
      });
      normalize(rho);
      const double cap = (eps > 0.0) ? 0.9 / eps : std::numeric_limits<double>::infinity();
      const double peak = rho.max_value();
      if (peak <= cap) break;
      stretch = std::min(1.45, stretch * std::pow(peak / cap, 0.6));
    }
    std::vector<double> amp(3), freq(3), phase(3);
    for (int k = 0; k < 3; ++k) {
      amp[k] = rng.uniform(0.4, 1.0);
      freq[k] = rng.uniform(0.8, 3.0);
      phase[k] = rng.uniform(0.0, 2.0 * kPi);
    }
    auto u = GridFunction::sample(-1.5, 1.5, grid_n, [&](double x) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += amp[k] * std::sin(freq[k] * kPi * x + phase[k]);
      return s;
    });
    const double peak_u = u.max_abs();
    if (peak_u > 1.5)
      for (double& v : u.values) v *= 1.5 / peak_u;
    InitialData data{std::move(rho), std::move(u), eps};
    validate(data);
    return data;
  }
  throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

}  // namespace sticky1d
