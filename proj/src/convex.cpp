#include "sticky1d/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sticky1d {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double value_scale(const std::vector<double>& y) {
  double s = 1.0;
  for (double v : y) s = std::max(s, std::abs(v));
  return s;
}

// Lower convex hull of the points (i, y[i]) by monotone chain, in index
// coordinates. A middle point is dropped when it lies above, or within
// dev_tol below, the chord of its neighbors, so kept vertices make strict
// convex turns. Returns vertex indices including both endpoints.
std::vector<int> lower_hull_vertices(const std::vector<double>& y, double dev_tol) {
  const int n = static_cast<int>(y.size());
  std::vector<int> v;
  v.reserve(32);
  for (int k = 0; k < n; ++k) {
    while (v.size() >= 2) {
      const int i = v[v.size() - 2];
      const int j = v.back();
      // cross / (k - i) is the signed height of j above the chord (i, k).
      const double cross = static_cast<double>(j - i) * (y[k] - y[i]) -
                           static_cast<double>(k - i) * (y[j] - y[i]);
      if (cross <= dev_tol * static_cast<double>(k - i))
        v.pop_back();
      else
        break;
    }
    v.push_back(k);
  }
  return v;
}

}  // namespace

GridFunction eps_convex_hull(const GridFunction& f, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps_convex_hull: eps must be >= 0");
  const int n = f.cells();
  std::vector<double> q, g;
  if (eps > 0.0) {
    q.resize(static_cast<size_t>(n) + 1);
    g = f.values;
    for (int i = 0; i <= n; ++i) {
      const double m = f.node(i);
      q[i] = 0.5 * eps * m * m;
      g[i] -= q[i];
    }
  }
  const std::vector<double>& shifted = (eps > 0.0) ? g : f.values;
  const double scale =
      (eps > 0.0) ? std::max(value_scale(f.values), value_scale(q)) : value_scale(f.values);
  const double fp_tol = 64.0 * kEps * scale;

  // Fast path: eps-convex inputs (up to roundoff) are their own hull.
  bool convex = true;
  for (int i = 1; i < n && convex; ++i)
    convex = (shifted[i - 1] - 2.0 * shifted[i] + shifted[i + 1]) >= -fp_tol;
  if (convex) return f;

  const std::vector<int> verts = lower_hull_vertices(shifted, fp_tol);
  GridFunction out = f;
  for (size_t k = 0; k + 1 < verts.size(); ++k) {
    const int a = verts[k];
    const int b = verts[k + 1];
    out.values[a] = f.values[a];  // contact nodes keep their sample verbatim
    const double ga = shifted[a];
    const double slope = (shifted[b] - shifted[a]) / static_cast<double>(b - a);
    for (int j = a + 1; j < b; ++j) {
      const double lin = ga + slope * static_cast<double>(j - a);
      out.values[j] = (eps > 0.0) ? lin + q[j] : lin;
    }
  }
  out.values[n] = f.values[n];
  return out;
}

GridFunction convex_hull(const GridFunction& f) { return eps_convex_hull(f, 0.0); }

bool is_eps_convex(const GridFunction& f, double eps, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("is_eps_convex: tol must be >= 0");
  const int n = f.cells();
  const double hh = f.spacing() * f.spacing();
  for (int i = 1; i < n; ++i)
    if (f.values[i - 1] - 2.0 * f.values[i] + f.values[i + 1] < eps * hh - tol) return false;
  return true;
}

GridFunction legendre(const GridFunction& f, double dual_lo, double dual_hi, int dual_n) {
  if (!(dual_hi > dual_lo)) throw std::invalid_argument("legendre: dual_hi must exceed dual_lo");
  if (dual_n < 1) throw std::invalid_argument("legendre: dual_n must be >= 1");
  const double dev_tol = 64.0 * kEps * value_scale(f.values);
  const std::vector<int> verts = lower_hull_vertices(f.values, dev_tol);
  const int nv = static_cast<int>(verts.size());
  std::vector<double> vx(nv), vy(nv);
  for (int k = 0; k < nv; ++k) {
    vx[k] = f.node(verts[k]);
    vy[k] = f.values[verts[k]];
  }
  std::vector<double> out(static_cast<size_t>(dual_n) + 1);
  const double dh = (dual_hi - dual_lo) / dual_n;
  int k = 0;
  for (int j = 0; j <= dual_n; ++j) {
    const double m = dual_lo + j * dh;
    // advance while the next vertex does not decrease x*m - f(x)
    while (k + 1 < nv && vy[k + 1] - vy[k] <= m * (vx[k + 1] - vx[k])) ++k;
    out[j] = vx[k] * m - vy[k];
  }
  return GridFunction(dual_lo, dual_hi, std::move(out));
}

GridFunction derivative(const GridFunction& f) {
  const int n = f.cells();
  const double h = f.spacing();
  std::vector<double> g(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) g[i] = (f.values[i + 1] - f.values[i]) / h;
  g[n] = g[n - 1];
  return GridFunction(f.lo, f.hi, std::move(g));
}

GridFunction generalized_inverse(const GridFunction& m_of_x, int range_n) {
  if (range_n < 1) throw std::invalid_argument("generalized_inverse: range_n must be >= 1");
  const int n = m_of_x.cells();
  const double scale = value_scale(m_of_x.values);
  std::vector<double> M = m_of_x.values;
  for (int i = 0; i < n; ++i)
    if (M[i + 1] < M[i] - 1e-12 * scale)
      throw std::invalid_argument("generalized_inverse: M must be nondecreasing");
  for (double& v : M) v = std::clamp(v, 0.0, 1.0);
  for (int i = 0; i < n; ++i) M[i + 1] = std::max(M[i + 1], M[i]);
  if (M.front() > 1e-6 || M.back() < 1.0 - 1e-6)
    throw std::invalid_argument("generalized_inverse: range of M must cover [0, 1]");

  std::vector<double> X(static_cast<size_t>(range_n) + 1);
  {
    // X(0): right edge of {M = 0}, so the inverse is continuous at the
    // support's left end instead of snapping to the grid boundary.
    int i = 0;
    while (i < n && M[i + 1] <= 0.0) ++i;
    X[0] = m_of_x.node(i);
  }
  int i = 0;
  for (int j = 1; j <= range_n; ++j) {
    const double m = static_cast<double>(j) / range_n;
    while (i <= n && M[i] < m) ++i;
    if (i > n) {
      X[j] = m_of_x.hi;
      continue;
    }
    if (i == 0) {
      X[j] = m_of_x.lo;
      continue;
    }
    X[j] = m_of_x.node(i - 1) + m_of_x.spacing() * (m - M[i - 1]) / (M[i] - M[i - 1]);
  }
  for (int j = 0; j < range_n; ++j) X[j + 1] = std::max(X[j + 1], X[j]);
  return GridFunction(0.0, 1.0, std::move(X));
}

double default_contact_tol(const GridFunction& psi) {
  return 1e-9 * std::max(1.0, psi.max_abs());
}

ClusterDecomposition cluster_decomposition(const GridFunction& psi, double eps, double tol) {
  const int n = psi.cells();
  const double hh = psi.spacing() * psi.spacing();
  const GridFunction hull = eps_convex_hull(psi, eps);

  ClusterDecomposition d;
  d.tol = tol;
  d.n_nodes = n + 1;
  std::vector<char> exposed(static_cast<size_t>(n) + 1, 0);
  exposed[0] = exposed[n] = 1;  // the hull always touches at the interval ends
  for (int i = 1; i < n; ++i) {
    const bool contact = psi.values[i] - hull.values[i] <= tol;
    const double d2 = hull.values[i - 1] - 2.0 * hull.values[i] + hull.values[i + 1];
    exposed[i] = contact && (d2 - eps * hh > tol) ? 1 : 0;
  }
  for (int i = 0; i <= n; ++i) {
    if (exposed[i]) {
      d.exposed.push_back(i);
      continue;
    }
    int j = i;
    while (j <= n && !exposed[j]) ++j;
    d.clusters.emplace_back(i - 1, j);  // bounded by exposed nodes on both sides
    i = j - 1;
  }
  return d;
}

ClusterDecomposition cluster_decomposition(const GridFunction& psi, double eps) {
  return cluster_decomposition(psi, eps, default_contact_tol(psi));
}

GridFunction parabola_splice(const GridFunction& f, int i1, int i2, double eps) {
  const int n = f.cells();
  if (i1 < 0 || i2 > n || i1 >= i2)
    throw std::invalid_argument("parabola_splice: need 0 <= i1 < i2 <= n");
  if (!is_eps_convex(f, eps, default_contact_tol(f)))
    throw std::invalid_argument("parabola_splice: input is not eps-convex");
  GridFunction out = f;
  const EpsParabola p{eps, f.node(i1), f.values[i1], f.node(i2), f.values[i2]};
  for (int j = i1 + 1; j < i2; ++j) out.values[j] = p(f.node(j));
  return out;
}

}  // namespace sticky1d
