#include "sticky1d/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sticky1d/convex.hpp"

namespace sticky1d {

XGrid default_grid(const InitialData& data, double t, int n) {
  const double pad = 0.05 * (data.density.hi - data.density.lo);
  const double u_min = data.velocity.min_value();
  const double u_max = data.velocity.max_value();
  return {data.density.lo + t * std::min(0.0, u_min) - pad,
          data.density.hi + t * std::max(0.0, u_max) + pad, n};
}

LagrangianState build_lagrangian(const InitialData& data, int n) {
  if (n < 16) throw std::invalid_argument("build_lagrangian: need n >= 16");
  validate(data);
  const GridFunction m_bar = cumulative(data.density);
  // psi = Phi* evaluated through the quantile function: X = inverse of M and
  // psi(m) = int_0^m X(s) ds. This is the same conjugate (psi(0) = 0 since
  // Phi >= 0 vanishes left of the support) but avoids the slope staircase a
  // node-max transform of the sampled Phi would produce.
  const GridFunction x_bar = generalized_inverse(m_bar, n);
  GridFunction psi_bar = eps_convex_hull(cumulative(x_bar), data.eps);
  std::vector<double> v(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) v[j] = data.velocity.eval(x_bar.values[j]);
  GridFunction v_bar = cumulative(GridFunction(0.0, 1.0, std::move(v)));
  return {std::move(psi_bar), std::move(v_bar), data.eps, 0.0};
}

namespace {

// Mass function on the x grid: M(x) = sup{m : X(m) <= x}, interpolated across
// strictly increasing segments of X (flat runs of X are atoms and make M jump).
GridFunction mass_from_positions(const GridFunction& x_of_m, const XGrid& grid) {
  const int nm = x_of_m.cells();
  GridFunction out(grid.lo, grid.hi, std::vector<double>(static_cast<size_t>(grid.n) + 1, 0.0));
  int k = -1;  // last mass node with X <= x
  for (int j = 0; j <= grid.n; ++j) {
    const double x = out.node(j);
    while (k + 1 <= nm && x_of_m.values[k + 1] <= x) ++k;
    if (k < 0) {
      out.values[j] = 0.0;
    } else if (k >= nm) {
      out.values[j] = 1.0;
    } else {
      const double m0 = static_cast<double>(k) / nm;
      const double dx = x_of_m.values[k + 1] - x_of_m.values[k];
      out.values[j] = m0 + (dx > 0.0 ? (x - x_of_m.values[k]) / (dx * nm) : 0.0);
    }
  }
  return out;
}

}  // namespace

GridFunction mass_from_lagrangian(const GridFunction& psi, const XGrid& grid) {
  const int nm = psi.cells();
  GridFunction x_of_m = derivative(psi);
  for (int k = 0; k < nm; ++k)
    x_of_m.values[k + 1] = std::max(x_of_m.values[k + 1], x_of_m.values[k]);
  return mass_from_positions(x_of_m, grid);
}

EulerianSolution eulerian_solution(const LagrangianState& state, const XGrid& grid) {
  if (grid.n < 2) throw std::invalid_argument("eulerian_solution: need n >= 2");
  const int nm = state.psi.cells();
  const GridFunction m_of_x = mass_from_lagrangian(state.psi, grid);

  // phi = int M dx, anchored at the direct conjugate value at grid.lo.
  GridFunction phi = cumulative(m_of_x);
  double anchor = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= nm; ++k) {
    const double m = static_cast<double>(k) / nm;
    anchor = std::max(anchor, grid.lo * m - state.psi.values[k]);
  }
  for (double& v : phi.values) v += anchor;

  GridFunction rho = derivative(derivative(phi));
  for (double& v : rho.values) v = std::max(v, 0.0);

  // u = v(d_x phi) with v taken from the velocity potential flattened over
  // the clusters of psi(., t): mass bound in one block reports the block's
  // rigid velocity, matching the particle-side convention.
  const GridFunction dphi = derivative(phi);
  const ClusterDecomposition decomp = cluster_decomposition(state.psi, state.eps);
  const GridFunction v_samples = derivative(flatten_velocity(state.v_potential, decomp));
  GridFunction u(grid.lo, grid.hi, std::vector<double>(static_cast<size_t>(grid.n) + 1, 0.0));
  for (int j = 0; j <= grid.n; ++j)
    if (rho.values[j] >= 1e-12) u.values[j] = v_samples.eval(dphi.values[j]);
  return {std::move(phi), std::move(rho), std::move(u), state.time};
}

EulerianSolution solve_finite_size(const InitialData& data, double t, int n, const XGrid& grid) {
  if (!(t >= 0.0)) throw std::invalid_argument("solve_finite_size: t must be >= 0");
  const LagrangianState lag = build_lagrangian(data, n);
  GridFunction psi_t = propagate({lag.psi, lag.v_potential, lag.eps}, t);
  return eulerian_solution({std::move(psi_t), lag.v_potential, lag.eps, t}, grid);
}

EulerianSolution solve_finite_size(const InitialData& data, double t, int n) {
  return solve_finite_size(data, t, n, default_grid(data, t, n));
}

EulerianSolution solve_zero_pressure(const InitialData& data, double t, int n, const XGrid& grid) {
  InitialData zp = data;
  zp.eps = 0.0;  // atoms allowed; the density bound is waived
  return solve_finite_size(zp, t, n, grid);
}

EulerianSolution solve_zero_pressure(const InitialData& data, double t, int n) {
  InitialData zp = data;
  zp.eps = 0.0;
  return solve_finite_size(zp, t, n, default_grid(data, t, n));
}

}  // namespace sticky1d
