#include "sticky1d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sticky1d {

GridFunction::GridFunction(double lo_, double hi_, std::vector<double> values_)
    : lo(lo_), hi(hi_), values(std::move(values_)) {
  if (!(hi > lo)) throw std::invalid_argument("GridFunction: hi must exceed lo");
  if (values.size() < 2) throw std::invalid_argument("GridFunction: need at least 2 samples");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
}

double GridFunction::eval(double x) const {
  const int n = cells();
  if (x <= lo) return values.front();
  if (x >= hi) return values.back();
  const double s = (x - lo) / spacing();
  int i = static_cast<int>(s);
  if (i >= n) i = n - 1;
  const double t = s - i;
  return values[i] + t * (values[i + 1] - values[i]);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double GridFunction::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("sup_diff: grids differ in size");
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

GridFunction cumulative(const GridFunction& f) {
  const int n = f.cells();
  const double h = f.spacing();
  std::vector<double> out(static_cast<size_t>(n) + 1);
  out[0] = 0.0;
  for (int i = 0; i < n; ++i)
    out[i + 1] = out[i] + 0.5 * h * (f.values[i] + f.values[i + 1]);
  return GridFunction(f.lo, f.hi, std::move(out));
}

double integral(const GridFunction& f) {
  const int n = f.cells();
  const double h = f.spacing();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += 0.5 * h * (f.values[i] + f.values[i + 1]);
  return acc;
}

void write_grid_csv(const GridFunction& f, const std::string& path, const std::string& axis) {
  std::ostringstream out;
  out << axis << ",value\n";
  char buf[64];
  for (int i = 0; i <= f.cells(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", f.node(i), f.values[i]);
    out << buf;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_grid_csv: cannot open " + tmp);
    os << out.str();
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_grid_csv: cannot rename to " + path);
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_grid_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_grid_csv: empty file " + path);
  std::vector<double> xs, vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("read_grid_csv: malformed row in " + path);
    xs.push_back(std::stod(line.substr(0, comma)));
    vs.push_back(std::stod(line.substr(comma + 1)));
  }
  if (xs.size() < 2) throw std::runtime_error("read_grid_csv: need at least 2 rows in " + path);
  return GridFunction(xs.front(), xs.back(), std::move(vs));
}

}  // namespace sticky1d
