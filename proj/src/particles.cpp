#include "sticky1d/particles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sticky1d {
namespace {

double edge_scale(const Cluster& a, const Cluster& b) {
  return std::max({1.0, std::abs(a.left_edge), std::abs(a.right_edge()),
                   std::abs(b.left_edge), std::abs(b.right_edge())});
}

// Least x with M(x) >= target, interpolated within the bracketing cell.
double quantile(const GridFunction& M, double target) {
  const int n = M.cells();
  int lo = 0, hi = n;
  if (M.values[0] >= target) return M.lo;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (M.values[mid] >= target ? hi : lo) = mid;
  }
  const double denom = M.values[hi] - M.values[lo];
  if (denom <= 0.0) return M.node(hi);
  return M.node(lo) + M.spacing() * (target - M.values[lo]) / denom;
}

}  // namespace

Cluster merge(const Cluster& a, const Cluster& b) {
  if (a.last + 1 != b.first)
    throw std::invalid_argument("merge: clusters must hold adjacent index ranges");
  const double gap = b.left_edge - a.right_edge();
  if (gap > 1e-12 * edge_scale(a, b))
    throw std::invalid_argument("merge: clusters must be touching");
  Cluster c;
  c.left_edge = a.left_edge;
  c.size = a.size + b.size;
  c.mass = a.mass + b.mass;
  const double ca = a.count(), cb = b.count();
  c.velocity = (ca * a.velocity + cb * b.velocity) / (ca + cb);
  c.first = a.first;
  c.last = b.last;
  return c;
}

void validate(const InitialData& data) {
  if (!(data.eps >= 0.0)) throw std::invalid_argument("InitialData: eps must be >= 0");
  if (data.density.lo != data.velocity.lo || data.density.hi != data.velocity.hi)
    throw std::invalid_argument("InitialData: density and velocity intervals differ");
  double max_rho = 0.0;
  for (double v : data.density.values) {
    if (v < -1e-12) throw std::invalid_argument("InitialData: density must be nonnegative");
    max_rho = std::max(max_rho, v);
  }
  if (std::abs(integral(data.density) - 1.0) > 1e-6)
    throw std::invalid_argument("InitialData: density must integrate to 1");
  if (data.eps > 0.0 && !(max_rho < 1.0 / data.eps))
    throw std::invalid_argument("InitialData: density bound ||rho||_inf < 1/eps violated");
}

double velocity_bound(const InitialData& data) { return data.velocity.max_abs(); }

std::pair<double, double> support(const InitialData& data) {
  const double thresh = 1e-12 * std::max(1.0, data.density.max_abs());
  int lo = 0, hi = data.density.cells();
  while (lo < hi && data.density.values[lo] <= thresh) ++lo;
  while (hi > lo && data.density.values[hi] <= thresh) --hi;
  return {data.density.node(std::max(0, lo - 1)), data.density.node(std::min(data.density.cells(), hi + 1))};
}

ParticleSystem ParticleSystem::from_initial_data(const InitialData& data, int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("init_particles: need N >= 1");
  validate(data);
  ParticleSystem sys;
  sys.n_particles_ = n_particles;
  sys.eps_ = data.eps;
  sys.nu_ = data.eps / n_particles;

  const auto [s_lo, s_hi] = support(data);
  const double span = s_hi - s_lo;
  if (n_particles * sys.nu_ > span + 2.0 * sys.nu_ + 0.05 * (data.density.hi - data.density.lo))
    throw std::invalid_argument("init_particles: N*nu exceeds the support length");

  const GridFunction M = cumulative(data.density);
  const double total = M.values.back();
  std::vector<double> centers(n_particles), velocities(n_particles);
  for (int i = 0; i < n_particles; ++i) {
    centers[i] = quantile(M, (i + 0.5) / n_particles * total);
    velocities[i] = data.velocity.eval(centers[i]);
  }
  for (int i = 1; i < n_particles; ++i)
    centers[i] = std::max(centers[i], centers[i - 1] + sys.nu_);

  sys.clusters_.resize(n_particles);
  const double mass = 1.0 / n_particles;
  for (int i = 0; i < n_particles; ++i) {
    Cluster& c = sys.clusters_[i];
    c.left_edge = centers[i] - 0.5 * sys.nu_;
    c.size = sys.nu_;
    c.mass = mass;
    c.velocity = velocities[i];
    c.first = c.last = i + 1;
  }
  return sys;
}

ParticleSystem ParticleSystem::from_clusters(int n_particles, double eps,
                                             std::vector<Cluster> clusters) {
  if (n_particles < 1) throw std::invalid_argument("from_clusters: need N >= 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("from_clusters: eps must be >= 0");
  if (clusters.empty()) throw std::invalid_argument("from_clusters: need at least one cluster");
  ParticleSystem sys;
  sys.n_particles_ = n_particles;
  sys.eps_ = eps;
  sys.nu_ = eps / n_particles;
  int next = 1;
  for (auto& c : clusters) {
    if (c.first != next || c.last < c.first)
      throw std::invalid_argument("from_clusters: ranges must partition 1..N in order");
    next = c.last + 1;
    c.size = c.count() * sys.nu_;
    c.mass = static_cast<double>(c.count()) / n_particles;
  }
  if (next != n_particles + 1)
    throw std::invalid_argument("from_clusters: ranges must partition 1..N");
  for (size_t i = 0; i + 1 < clusters.size(); ++i) {
    const double gap = clusters[i + 1].left_edge - clusters[i].right_edge();
    if (gap < -1e-12 * edge_scale(clusters[i], clusters[i + 1]))
      throw std::invalid_argument("from_clusters: clusters overlap");
  }
  sys.clusters_ = std::move(clusters);
  return sys;
}

double ParticleSystem::total_mass() const {
  double m = 0.0;
  for (const auto& c : clusters_) m += c.mass;
  return m;
}

double ParticleSystem::momentum() const {
  double p = 0.0;
  for (const auto& c : clusters_) p += c.mass * c.velocity;
  return p;
}

double ParticleSystem::position_scale() const {
  double s = 1.0;
  for (const auto& c : clusters_)
    s = std::max({s, std::abs(c.left_edge), std::abs(c.right_edge())});
  return s;
}

std::optional<NextCollision> ParticleSystem::next_collision() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < clusters_.size(); ++i) {
    const double dv = clusters_[i].velocity - clusters_[i + 1].velocity;
    if (dv <= 0.0) continue;
    const double gap = std::max(0.0, clusters_[i + 1].left_edge - clusters_[i].right_edge());
    best = std::min(best, gap / dv);
  }
  if (!std::isfinite(best)) return std::nullopt;
  NextCollision nc;
  nc.dt = best;
  const double group_tol = 1e-12 * std::max(1.0, best);
  for (size_t i = 0; i + 1 < clusters_.size(); ++i) {
    const double dv = clusters_[i].velocity - clusters_[i + 1].velocity;
    if (dv <= 0.0) continue;
    const double gap = std::max(0.0, clusters_[i + 1].left_edge - clusters_[i].right_edge());
    if (gap / dv <= best + group_tol) nc.pairs.push_back(static_cast<int>(i));
  }
  return nc;
}

void ParticleSystem::translate(double dt) {
  for (auto& c : clusters_) c.left_edge += c.velocity * dt;
}

void ParticleSystem::resolve_contacts() {
  const double touch_tol = 1e-12 * position_scale();
  std::vector<std::pair<int, int>> before;
  before.reserve(clusters_.size());
  for (const auto& c : clusters_) before.emplace_back(c.first, c.last);

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < clusters_.size();) {
      const double gap = clusters_[i + 1].left_edge - clusters_[i].right_edge();
      const double dv = clusters_[i].velocity - clusters_[i + 1].velocity;
      if (gap <= touch_tol && dv > 0.0) {  // touching and approaching
        clusters_[i] = merge(clusters_[i], clusters_[i + 1]);
        clusters_.erase(clusters_.begin() + static_cast<long>(i) + 1);
        ++merges_;
        changed = true;
        if (i > 0) --i;  // the merged block may now reach its left neighbor
      } else {
        ++i;
      }
    }
  }
  if (merges_ > n_particles_ - 1)
    throw std::logic_error("advance_to: merge count exceeded N-1");

  CollisionEvent ev;
  ev.time = time_;
  size_t j = 0;
  for (const auto& c : clusters_) {
    while (j < before.size() && before[j].second < c.last) ++j;
    if (j >= before.size() || before[j] != std::make_pair(c.first, c.last))
      ev.merged.emplace_back(c.first, c.last);
  }
  if (!ev.merged.empty()) log_.push_back(std::move(ev));
}

void ParticleSystem::advance_to(double t) {
  if (t < time_) throw std::invalid_argument("advance_to: target time is in the past");
  for (;;) {
    const auto nc = next_collision();
    if (!nc || time_ + nc->dt > t) break;
    translate(nc->dt);
    time_ += nc->dt;
    resolve_contacts();
  }
  translate(t - time_);
  time_ = t;
}

GridFunction ParticleSystem::density_profile(double lo, double hi, int n) const {
  GridFunction out(lo, hi, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  if (eps_ == 0.0) {
    const double h = out.spacing();
    for (const auto& c : clusters_) {
      const int j = std::clamp(static_cast<int>(std::lround((c.left_edge - lo) / h)), 0, n);
      out.values[j] += c.mass / h;
    }
    return out;
  }
  const double inv_eps = 1.0 / eps_;
  size_t k = 0;
  for (int j = 0; j <= n; ++j) {
    const double x = out.node(j);
    while (k < clusters_.size() && clusters_[k].right_edge() < x) ++k;
    if (k < clusters_.size() && clusters_[k].left_edge <= x) out.values[j] = inv_eps;
  }
  return out;
}

GridFunction ParticleSystem::velocity_profile(double lo, double hi, int n) const {
  GridFunction out(lo, hi, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  if (eps_ == 0.0) {
    const double h = out.spacing();
    for (const auto& c : clusters_) {
      const int j = std::clamp(static_cast<int>(std::lround((c.left_edge - lo) / h)), 0, n);
      out.values[j] = c.velocity;
    }
    return out;
  }
  size_t k = 0;
  for (int j = 0; j <= n; ++j) {
    const double x = out.node(j);
    while (k < clusters_.size() && clusters_[k].right_edge() < x) ++k;
    if (k < clusters_.size() && clusters_[k].left_edge <= x) out.values[j] = clusters_[k].velocity;
  }
  return out;
}

GridFunction ParticleSystem::cumulative_mass(double lo, double hi, int n) const {
  GridFunction out(lo, hi, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  size_t k = 0;
  double passed = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double x = out.node(j);
    while (k < clusters_.size() && clusters_[k].right_edge() <= x) passed += clusters_[k++].mass;
    double m = passed;
    if (k < clusters_.size() && clusters_[k].left_edge < x) {
      const Cluster& c = clusters_[k];
      m += c.size > 0.0 ? c.mass * (x - c.left_edge) / c.size : c.mass;
    }
    out.values[j] = m;
  }
  return out;
}

GridFunction ParticleSystem::phi_tilde(double lo, double hi, int n) const {
  // For a single block, int_{-inf}^{x} M(s) ds is 0 left of it, a quadratic
  // inside, and mass*(x - right + size/2) past it; sum over blocks with
  // running aggregates so each node costs O(1).
  GridFunction out(lo, hi, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  size_t k = 0;
  double agg_mass = 0.0, agg_lin = 0.0;  // passed blocks: sum m_c, sum m_c*(right_c - size_c/2)
  for (int j = 0; j <= n; ++j) {
    const double x = out.node(j);
    while (k < clusters_.size() && clusters_[k].right_edge() <= x) {
      const Cluster& c = clusters_[k++];
      agg_mass += c.mass;
      agg_lin += c.mass * (c.right_edge() - 0.5 * c.size);
    }
    double phi = agg_mass * x - agg_lin;
    if (k < clusters_.size() && clusters_[k].left_edge < x) {
      const Cluster& c = clusters_[k];
      const double dx = x - c.left_edge;
      phi += c.size > 0.0 ? 0.5 * c.mass * dx * dx / c.size : c.mass * dx;
    }
    out.values[j] = phi;
  }
  return out;
}

GridFunction ParticleSystem::psi_tilde(int n) const {
  if (n < 1) throw std::invalid_argument("psi_tilde: need n >= 1");
  const int nc = static_cast<int>(clusters_.size());
  // Mass boundaries and the exact integral of X up to each of them.
  std::vector<double> b0(nc), slope(nc), prefix(nc);
  double acc = 0.0;
  for (int c = 0; c < nc; ++c) {
    b0[c] = static_cast<double>(clusters_[c].first - 1) / n_particles_;
    slope[c] = clusters_[c].size / clusters_[c].mass;  // = eps up to roundoff
    prefix[c] = acc;
    acc += clusters_[c].left_edge * clusters_[c].mass +
           0.5 * slope[c] * clusters_[c].mass * clusters_[c].mass;
  }
  GridFunction out(0.0, 1.0, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  int c = 0;
  for (int j = 1; j <= n; ++j) {
    const double m = static_cast<double>(j) / n;
    while (c + 1 < nc && b0[c + 1] < m) ++c;
    const double dm = m - b0[c];
    out.values[j] = prefix[c] + clusters_[c].left_edge * dm + 0.5 * slope[c] * dm * dm;
  }
  return out;
}

GridFunction ParticleSystem::velocity_potential(int n) const {
  if (n < 1) throw std::invalid_argument("velocity_potential: need n >= 1");
  const int nc = static_cast<int>(clusters_.size());
  std::vector<double> b0(nc), prefix(nc);
  double acc = 0.0;
  for (int c = 0; c < nc; ++c) {
    b0[c] = static_cast<double>(clusters_[c].first - 1) / n_particles_;
    prefix[c] = acc;
    acc += clusters_[c].velocity * clusters_[c].mass;
  }
  GridFunction out(0.0, 1.0, std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
  int c = 0;
  for (int j = 1; j <= n; ++j) {
    const double m = static_cast<double>(j) / n;
    while (c + 1 < nc && b0[c + 1] < m) ++c;
    out.values[j] = prefix[c] + clusters_[c].velocity * (m - b0[c]);
  }
  return out;
}

}  // namespace sticky1d
