#include "sticky1d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sticky1d {

double l1_diff(const GridFunction& a, const GridFunction& b) {
  std::vector<double> pts;
  pts.reserve(a.values.size() + b.values.size());
  for (int i = 0; i <= a.cells(); ++i) pts.push_back(a.node(i));
  for (int i = 0; i <= b.cells(); ++i) pts.push_back(b.node(i));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  double acc = 0.0;
  double x0 = pts[0];
  double d0 = a.eval(x0) - b.eval(x0);
  for (size_t i = 1; i < pts.size(); ++i) {
    const double x1 = pts[i];
    const double d1 = a.eval(x1) - b.eval(x1);
    const double w = x1 - x0;
    if (w > 0.0) {
      if (d0 * d1 >= 0.0) {
        acc += 0.5 * w * (std::abs(d0) + std::abs(d1));
      } else {
        // linear difference changes sign inside the cell; split at the root
        const double s = d0 / (d0 - d1);
        acc += 0.5 * (s * w * std::abs(d0) + (1.0 - s) * w * std::abs(d1));
      }
    }
    x0 = x1;
    d0 = d1;
  }
  return acc;
}

double w1_distance(const GridFunction& m1, const GridFunction& m2) { return l1_diff(m1, m2); }

}  // namespace sticky1d
