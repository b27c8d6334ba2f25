#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sticky1d/grid.hpp"

namespace sticky1d {

/// Rigid block of glued particles. Constituents are the 1-based particle
/// indices first..last; mass is count/N and size is count*nu, so the density
/// inside a cluster is always 1/eps.
struct Cluster {
  double left_edge = 0.0;
  double size = 0.0;
  double mass = 0.0;
  double velocity = 0.0;
  int first = 1;
  int last = 1;

  int count() const { return last - first + 1; }
  double right_edge() const { return left_edge + size; }
};

/// Sticking merge of two adjacent touching clusters; the velocity is the
/// momentum-weighted mean (equal-weight over constituent particles).
Cluster merge(const Cluster& a, const Cluster& b);

struct CollisionEvent {
  double time = 0.0;
  std::vector<std::pair<int, int>> merged;  // index ranges formed at this instant
};

/// Bounded density with unit mass and bounded velocity on a common interval.
struct InitialData {
  GridFunction density;
  GridFunction velocity;
  double eps = 0.0;
};

/// Throws unless density >= 0 integrates to 1 (tol 1e-6), grids agree, and,
/// for eps > 0, ||density||_inf < 1/eps strictly.
void validate(const InitialData& data);

/// max |velocity| over the samples (the constant C).
double velocity_bound(const InitialData& data);

/// [min, max] of the nodes where density exceeds 1e-12 * ||density||_inf.
std::pair<double, double> support(const InitialData& data);

struct NextCollision {
  double dt = 0.0;                // relative to the current system time
  std::vector<int> pairs;         // indices i meaning clusters (i, i+1)
};

/// Event-driven system of N identical particles of size nu = eps/N and mass
/// 1/N that move freely and merge on contact with momentum conservation.
class ParticleSystem {
 public:
  /// Particle i is centered at the (i - 1/2)/N quantile of the density, then
  /// shifted minimally to the right to enforce spacing >= nu; velocities are
  /// read at the unshifted centers. Touching particles are not pre-merged.
  static ParticleSystem from_initial_data(const InitialData& data, int n_particles);

  /// Adopts explicit clusters (ordered, non-overlapping, ranges partitioning
  /// 1..N). Sizes and masses are recomputed from the constituent counts.
  static ParticleSystem from_clusters(int n_particles, double eps, std::vector<Cluster> clusters);

  int n_particles() const { return n_particles_; }
  double eps() const { return eps_; }
  double nu() const { return nu_; }
  double time() const { return time_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  const std::vector<CollisionEvent>& collision_log() const { return log_; }

  double total_mass() const;
  double momentum() const;

  /// Earliest approach contact: min over adjacent approaching pairs of
  /// gap/dv, together with every pair within 1e-12 of that minimum.
  std::optional<NextCollision> next_collision() const;

  /// Ballistic translation interleaved with transitive resolution of every
  /// contact instant up to time t. Deterministic.
  void advance_to(double t);

  /// Piecewise-constant profiles on a caller grid: density 1/eps and the
  /// cluster velocity inside blocks, 0 outside. With eps == 0 the blocks are
  /// points; each cluster deposits mass/h (resp. its velocity) at the nearest
  /// node instead.
  GridFunction density_profile(double lo, double hi, int n) const;
  GridFunction velocity_profile(double lo, double hi, int n) const;

  /// M_N(x): exact node samples of the cumulative mass function.
  GridFunction cumulative_mass(double lo, double hi, int n) const;

  /// Integral of M_N from -infinity, exact per node (piecewise quadratic).
  GridFunction phi_tilde(double lo, double hi, int n) const;

  /// psi~(m) = int_0^m X_N(s) ds on the [0, 1] mass grid, where X_N is the
  /// generalized inverse of M_N; integrated exactly across cluster boundaries.
  GridFunction psi_tilde(int n) const;

  /// V(m) = int_0^m v_N(s) ds with v_N the cluster velocity as a step function
  /// in mass coordinates; exact piecewise-linear node samples.
  GridFunction velocity_potential(int n) const;

 private:
  ParticleSystem() = default;
  void translate(double dt);
  void resolve_contacts();
  double position_scale() const;

  std::vector<Cluster> clusters_;
  std::vector<CollisionEvent> log_;
  int n_particles_ = 0;
  double eps_ = 0.0;
  double nu_ = 0.0;
  double time_ = 0.0;
  int merges_ = 0;
};

}  // namespace sticky1d
