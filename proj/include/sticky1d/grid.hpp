#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sticky1d {

/// Uniformly sampled real function on a closed interval [lo, hi].
/// `values` holds n+1 samples at the nodes lo + i*(hi-lo)/n, n >= 1.
struct GridFunction {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> values;

  GridFunction() : values{0.0, 0.0} {}
  GridFunction(double lo_, double hi_, std::vector<double> values_);

  template <class F>
  static GridFunction sample(double lo, double hi, int n, F&& f) {
    std::vector<double> v(static_cast<size_t>(n) + 1);
    const double h = (hi - lo) / n;
    for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = f(lo + i * h);
    return GridFunction(lo, hi, std::move(v));
  }

  int cells() const { return static_cast<int>(values.size()) - 1; }
  double spacing() const { return (hi - lo) / cells(); }
  double node(int i) const { return lo + i * spacing(); }

  /// Piecewise-linear evaluation; arguments outside [lo, hi] clamp to the ends.
  double eval(double x) const;

  double max_abs() const;
  double min_value() const;
  double max_value() const;
};

/// max_i |a_i - b_i|; requires identical grids.
double sup_diff(const GridFunction& a, const GridFunction& b);

/// Running trapezoid integral on the same grid, anchored at F(lo) = 0.
GridFunction cumulative(const GridFunction& f);

/// Trapezoid integral over the whole interval.
double integral(const GridFunction& f);

/// CSV with header "<axis>,value", one row per node, round-trip precision.
/// Writes are atomic (temp file + rename).
void write_grid_csv(const GridFunction& f, const std::string& path,
                    const std::string& axis = "x");
GridFunction read_grid_csv(const std::string& path);

}  // namespace sticky1d
