#pragma once

#include <vector>

#include "sticky1d/convex.hpp"
#include "sticky1d/grid.hpp"

namespace sticky1d {

/// An eps-convex potential psi on [0, 1] together with the velocity potential
/// V (antiderivative of the velocity in mass coordinates) it is advected by.
/// V must be Lipschitz; it is stored as samples on the same grid as psi.
struct PropagatorInput {
  GridFunction psi;
  GridFunction v_potential;
  double eps = 0.0;
};

/// Throws invalid_argument when grids mismatch or psi fails the eps-convexity
/// test at tolerance 1e-6 * max(1, ||psi||_inf).
void validate(const PropagatorInput& in);

/// V made linear across each cluster interval (values pinned at the bounding
/// exposed nodes); equal to V at exposed nodes, continuous everywhere.
GridFunction flatten_velocity(const GridFunction& v_potential, const ClusterDecomposition& decomp);

/// The Lagrangian propagator: [psi + t * V_psi]_eps with V_psi flattened over
/// the cluster decomposition of the *input* psi.
GridFunction propagate(const PropagatorInput& in, double t);

/// States at each requested time, computed incrementally (each step propagates
/// the previous state with its own cluster decomposition). By the semigroup
/// property this agrees with direct propagation up to grid error.
std::vector<GridFunction> evolve_schedule(const PropagatorInput& in,
                                          const std::vector<double>& times);

}  // namespace sticky1d
