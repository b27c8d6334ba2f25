#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sticky1d/particles.hpp"

namespace sticky1d {

/// Built-in initial data families:
///   uniform-block     unit block on [0, 1], uniform velocity 1 (rigid translation)
///   two-block-headon  two half-mass blocks approaching at speed 1 each
///   riemann-shear     uniform block with a velocity jump +1 / -1 at the center
///   triangular        triangle density on [-1, 1], focusing velocity u = -x
///   random-bump       seeded sum of smooth bumps, seeded bounded velocity
///   point-collision   two narrow blocks (mollified atoms) approaching head-on
/// Densities are normalized numerically; random-bump is stretched when needed
/// to keep ||rho||_inf <= 0.9/eps.
InitialData make_preset(const std::string& name, double eps, int grid_n, uint64_t seed = 1);

const std::vector<std::string>& preset_names();

}  // namespace sticky1d
