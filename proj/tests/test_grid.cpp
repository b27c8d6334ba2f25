#include <doctest.h>

#include <cmath>

#include <cstdio>
#include <filesystem>

#include "sticky1d/grid.hpp"
#include "sticky1d/metrics.hpp"

using namespace sticky1d;

TEST_CASE("grid construction validates invariants") {
  CHECK_THROWS_AS(GridFunction(1.0, 1.0, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(0.0, 1.0, {0.0, std::nan("")}), std::invalid_argument);
  GridFunction f(0.0, 2.0, {0.0, 1.0, 4.0, 9.0, 16.0});
  CHECK(f.cells() == 4);
  CHECK(f.spacing() == doctest::Approx(0.5));
  CHECK(f.node(3) == doctest::Approx(1.5));
}

TEST_CASE("piecewise-linear eval clamps at the ends") {
  GridFunction f(0.0, 1.0, {1.0, 3.0, 2.0});
  CHECK(f.eval(0.25) == doctest::Approx(2.0));
  CHECK(f.eval(0.75) == doctest::Approx(2.5));
  CHECK(f.eval(-5.0) == 1.0);
  CHECK(f.eval(5.0) == 2.0);
}

TEST_CASE("cumulative trapezoid is exact for linear integrands") {
  auto f = GridFunction::sample(0.0, 2.0, 64, [](double x) { return 3.0 * x - 1.0; });
  auto F = cumulative(f);
  for (int i = 0; i <= 64; ++i) {
    const double x = f.node(i);
    CHECK(F.values[i] == doctest::Approx(1.5 * x * x - x).epsilon(1e-13));
  }
  CHECK(integral(f) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("csv round trip preserves values exactly") {
  auto f = GridFunction::sample(-1.0, 2.0, 17, [](double x) { return std::sin(5 * x) / 3.0; });
  const std::string path =
      (std::filesystem::temp_directory_path() / "sticky1d_grid_roundtrip.csv").string();
  write_grid_csv(f, path, "m");
  GridFunction g = read_grid_csv(path);
  REQUIRE(g.values.size() == f.values.size());
  CHECK(g.lo == f.lo);
  CHECK(g.hi == f.hi);
  for (size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
  std::filesystem::remove(path);
}

TEST_CASE("l1_diff integrates |a-b| exactly across sign changes") {
  // a - b = x on [-1, 1]: integral of |x| is 1.
  auto a = GridFunction::sample(-1.0, 1.0, 4, [](double x) { return x; });
  auto b = GridFunction::sample(-1.0, 1.0, 4, [](double) { return 0.0; });
  CHECK(l1_diff(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  // different grids, same function: distance 0
  auto c = GridFunction::sample(-1.0, 1.0, 7, [](double x) { return x; });
  CHECK(l1_diff(a, c) == doctest::Approx(0.0).epsilon(1e-14));
}
