#pragma once

#include "sticky1d/grid.hpp"
#include "sticky1d/particles.hpp"
#include "sticky1d/propagator.hpp"

namespace sticky1d {

/// Lagrangian potential psi(., t) on the [0, 1] mass grid, with the velocity
/// potential V it is advected by.
struct LagrangianState {
  GridFunction psi;
  GridFunction v_potential;
  double eps = 0.0;
  double time = 0.0;
};

/// Eulerian fields on an x grid: convex potential phi, density rho = d2 phi,
/// velocity u = v(d phi).
struct EulerianSolution {
  GridFunction phi;
  GridFunction density;
  GridFunction velocity;
  double time = 0.0;
};

struct XGrid {
  double lo = 0.0;
  double hi = 1.0;
  int n = 1;
};

/// x grid covering the support transported for time t, with padding.
XGrid default_grid(const InitialData& data, double t, int n);

/// M = cumulative density, Phi = cumulative M, psi = eps-convex hull of the
/// Legendre transform of Phi on the [0, 1] mass grid (n cells), and
/// V(m) = int_0^m u(d_m psi) with the velocity interpolated at the transported
/// positions. Requires n >= 16 and, for eps > 0, ||rho||_inf < 1/eps.
LagrangianState build_lagrangian(const InitialData& data, int n);

/// Mass function M(x) recovered from a Lagrangian potential: the monotone
/// inverse of X = d_m psi, interpolated across strictly increasing segments
/// and sampled on the x grid.
GridFunction mass_from_lagrangian(const GridFunction& psi, const XGrid& grid);

/// Conjugates a Lagrangian state back to x space: phi anchored at the direct
/// Legendre value at grid.lo and integrated from the mass function M (the
/// monotone inverse of X = d_m psi), rho = derivative(derivative(phi)) clipped
/// at 0, u = v(d_x phi) and 0 where rho < 1e-12.
EulerianSolution eulerian_solution(const LagrangianState& state, const XGrid& grid);

/// Finite-size solution at time t: propagate the Lagrangian state, then map to
/// x space.
EulerianSolution solve_finite_size(const InitialData& data, double t, int n);
EulerianSolution solve_finite_size(const InitialData& data, double t, int n, const XGrid& grid);

/// Zero-pressure baseline: the same pipeline run at eps = 0 (plain convex
/// hulls; the density bound on the data is waived, atoms appear as grid
/// spikes and should be compared through cumulatives).
EulerianSolution solve_zero_pressure(const InitialData& data, double t, int n);
EulerianSolution solve_zero_pressure(const InitialData& data, double t, int n, const XGrid& grid);

}  // namespace sticky1d
