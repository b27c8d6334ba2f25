#include "sticky1d/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sticky1d {

void validate(const PropagatorInput& in) {
  if (!(in.eps >= 0.0)) throw std::invalid_argument("PropagatorInput: eps must be >= 0");
  if (in.psi.values.size() != in.v_potential.values.size() || in.psi.lo != in.v_potential.lo ||
      in.psi.hi != in.v_potential.hi)
    throw std::invalid_argument("PropagatorInput: psi and v_potential grids differ");
  const double tol = 1e-6 * std::max(1.0, in.psi.max_abs());
  if (!is_eps_convex(in.psi, in.eps, tol))
    throw std::invalid_argument("PropagatorInput: psi is not eps-convex");
}

GridFunction flatten_velocity(const GridFunction& v_potential,
                              const ClusterDecomposition& decomp) {
  if (decomp.n_nodes != static_cast<int>(v_potential.values.size()))
    throw std::invalid_argument("flatten_velocity: decomposition grid size mismatch");
  GridFunction out = v_potential;
  for (const auto& [a, b] : decomp.clusters) {
    const double va = v_potential.values[a];
    const double slope = (v_potential.values[b] - va) / static_cast<double>(b - a);
    for (int j = a + 1; j < b; ++j) out.values[j] = va + slope * static_cast<double>(j - a);
  }
  return out;
}

GridFunction propagate(const PropagatorInput& in, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("propagate: t must be >= 0");
  validate(in);
  const ClusterDecomposition decomp = cluster_decomposition(in.psi, in.eps);
  const GridFunction v_flat = flatten_velocity(in.v_potential, decomp);
  GridFunction sum = in.psi;
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += t * v_flat.values[i];
  return eps_convex_hull(sum, in.eps);
}

std::vector<GridFunction> evolve_schedule(const PropagatorInput& in,
                                          const std::vector<double>& times) {
  if (times.empty()) return {};
  if (!(times.front() >= 0.0))
    throw std::invalid_argument("evolve_schedule: times must be nonnegative");
  for (size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("evolve_schedule: times must be strictly increasing");
  std::vector<GridFunction> out;
  out.reserve(times.size());
  GridFunction state = in.psi;
  double prev = 0.0;
  for (double t : times) {
    state = propagate({state, in.v_potential, in.eps}, t - prev);
    prev = t;
    out.push_back(state);
  }
  return out;
}

}  // namespace sticky1d
