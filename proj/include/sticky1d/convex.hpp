#pragma once

#include <utility>
#include <vector>

#include "sticky1d/grid.hpp"

namespace sticky1d {

/// The unique quadratic with second derivative `eps` through (m1, y1), (m2, y2).
struct EpsParabola {
  double eps;
  double m1, y1;
  double m2, y2;

  double operator()(double s) const {
    const double w = m2 - m1;
    return y1 * (m2 - s) / w + y2 * (s - m1) / w - 0.5 * eps * (m2 - s) * (s - m1);
  }
};

/// Lower convex envelope of the piecewise-linear interpolant, sampled back on
/// the same grid. Nodewise minorant of f with nondecreasing slopes.
GridFunction convex_hull(const GridFunction& f);

/// Largest eps-convex minorant, computed via the shift identity
///   [f]_eps = conv(f - eps*m^2/2) + eps*m^2/2.
/// Inputs that are already eps-convex (up to roundoff) are returned verbatim,
/// which makes the operation a bitwise fixed point on its own output.
GridFunction eps_convex_hull(const GridFunction& f, double eps);

/// Second-difference test: f(i-1) - 2 f(i) + f(i+1) >= eps*h^2 - tol at every
/// interior node. Equivalent to the chord/parabola condition on uniform grids.
bool is_eps_convex(const GridFunction& f, double eps, double tol);

/// Discrete Legendre-Fenchel transform g(m) = max_i (x_i*m - f(x_i)) on a dual
/// grid, O(n + dual_n) by a monotone sweep over hull vertices. Non-convex
/// inputs are implicitly replaced by their hull (f* = (conv f)*).
GridFunction legendre(const GridFunction& f, double dual_lo, double dual_hi, int dual_n);

/// One-sided difference quotients; the last value repeats the previous one.
GridFunction derivative(const GridFunction& f);

/// Generalized inverse of a nondecreasing M with range [0, 1]:
/// X(m) = least x with M(x) >= m for m > 0, interpolated across strictly
/// increasing segments; X(0) is the right edge of {M = 0}. Output lives on
/// the [0, 1] grid with range_n cells.
GridFunction generalized_inverse(const GridFunction& m_of_x, int range_n);

/// Partition of the node set into cluster intervals and exposed nodes.
struct ClusterDecomposition {
  std::vector<std::pair<int, int>> clusters;  // open index intervals (a, b), a/b exposed
  std::vector<int> exposed;                   // sorted node indices
  double tol = 0.0;
  int n_nodes = 0;
};

/// Default contact tolerance: 1e-9 * max(1, ||psi||_inf).
double default_contact_tol(const GridFunction& psi);

/// A node is exposed when psi touches its eps-convex hull there (within tol)
/// and the hull curves strictly faster than an eps-parabola; maximal runs of
/// the remaining nodes, extended by their bounding exposed nodes, form the
/// cluster intervals. Interior nodes of an exact eps-parabola segment are
/// cluster points even though they touch the hull.
ClusterDecomposition cluster_decomposition(const GridFunction& psi, double eps, double tol);
ClusterDecomposition cluster_decomposition(const GridFunction& psi, double eps);

/// Replaces f on the open index interval (i1, i2) by the eps-parabola through
/// the endpoint values. Requires eps-convex input; the result stays eps-convex.
GridFunction parabola_splice(const GridFunction& f, int i1, int i2, double eps);

}  // namespace sticky1d
