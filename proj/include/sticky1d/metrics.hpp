#pragma once

#include "sticky1d/grid.hpp"

namespace sticky1d {

/// Exact integral of |a - b| treating both as piecewise linear, over the union
/// of their intervals (values clamp to the nearest end outside a grid). Grids
/// may differ; every node of either grid is a breakpoint and sign changes are
/// split at the exact crossing.
double l1_diff(const GridFunction& a, const GridFunction& b);

/// Transport distance between two mass measures given their cumulative
/// functions: W1 = int |M1 - M2| dx.
double w1_distance(const GridFunction& m1, const GridFunction& m2);

}  // namespace sticky1d
