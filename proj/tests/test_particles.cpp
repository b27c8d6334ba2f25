#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sticky1d/convex.hpp"
#include "sticky1d/particles.hpp"

using namespace sticky1d;

namespace {

InitialData uniform_data(double eps) {
  auto rho = GridFunction::sample(0.0, 1.0, 256, [](double) { return 1.0; });
  auto u = GridFunction::sample(0.0, 1.0, 256, [](double x) { return x; });
  return {std::move(rho), std::move(u), eps};
}

std::vector<Cluster> random_singletons(SplitMix64& rng, int n, double eps, double span,
                                       double vmax) {
  const double nu = eps / n;
  std::vector<double> centers(n);
  for (auto& c : centers) c = rng.uniform(0.0, span);
  std::sort(centers.begin(), centers.end());
  std::vector<Cluster> cs(n);
  double prev = -1e300;
  for (int i = 0; i < n; ++i) {
    double left = std::max(centers[i], prev + 1e-6) ;
    cs[i].left_edge = left;
    cs[i].velocity = rng.uniform(-vmax, vmax);
    cs[i].first = cs[i].last = i + 1;
    prev = left + nu;
  }
  return cs;
}

}  // namespace

TEST_CASE("init_particles places quantiles with minimal right shifts") {
  InitialData data = uniform_data(0.5);
  ParticleSystem sys = ParticleSystem::from_initial_data(data, 2);
  REQUIRE(sys.clusters().size() == 2);
  CHECK(sys.nu() == doctest::Approx(0.25));
  // centers at the 1/4 and 3/4 quantiles
  CHECK(sys.clusters()[0].left_edge == doctest::Approx(0.25 - 0.125).epsilon(1e-10));
  CHECK(sys.clusters()[1].left_edge == doctest::Approx(0.75 - 0.125).epsilon(1e-10));
  const double gap = sys.clusters()[1].left_edge - sys.clusters()[0].right_edge();
  CHECK(gap == doctest::Approx(0.25).epsilon(1e-10));

  ParticleSystem one = ParticleSystem::from_initial_data(data, 1);
  REQUIRE(one.clusters().size() == 1);
  CHECK(one.clusters()[0].left_edge + 0.25 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(one.clusters()[0].velocity == doctest::Approx(0.5).epsilon(1e-10));  // u at the median
}

TEST_CASE("init_particles: empirical cumulative tracks the density quantiles") {
  auto rho = GridFunction::sample(-1.0, 1.0, 2048, [](double x) {
    return std::max(0.0, 1.0 - std::abs(x));
  });
  auto u = GridFunction::sample(-1.0, 1.0, 2048, [](double) { return 0.0; });
  InitialData data{rho, u, 0.5};
  const int N = 64;
  ParticleSystem sys = ParticleSystem::from_initial_data(data, N);
  const GridFunction M = cumulative(data.density);
  double worst = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double x = -1.0 + 2.0 * k / 400.0;
    int count = 0;
    for (const auto& c : sys.clusters())
      if (c.left_edge + 0.5 * c.size <= x) ++count;
    worst = std::max(worst, std::abs(static_cast<double>(count) / N - M.eval(x)));
  }
  CHECK(worst <= 1.0 / N + 1e-9);
}

TEST_CASE("merge conserves mass and momentum") {
  Cluster a{0.0, 0.25, 0.5, 1.0, 1, 1};
  Cluster b{0.25, 0.25, 0.5, -1.0, 2, 2};
  const Cluster ab = merge(a, b);
  CHECK(ab.velocity == 0.0);
  CHECK(ab.mass == 1.0);
  CHECK(ab.size == 0.5);
  CHECK(ab.first == 1);
  CHECK(ab.last == 2);

  // masses 1/4 and 3/4 (counts 1 and 3 of N = 4), velocities 4 and 0
  Cluster c{0.0, 0.1, 0.25, 4.0, 1, 1};
  Cluster d{0.1, 0.3, 0.75, 0.0, 2, 4};
  CHECK(merge(c, d).velocity == 1.0);

  Cluster far{1.0, 0.1, 0.25, 0.0, 2, 2};
  CHECK_THROWS_AS(merge(c, far), std::invalid_argument);
  Cluster wrong_range{0.1, 0.1, 0.25, 0.0, 3, 3};
  CHECK_THROWS_AS(merge(c, wrong_range), std::invalid_argument);
}

TEST_CASE("chained merges average equal-mass velocities") {
  SplitMix64 rng(10);
  const int k = 9;
  std::vector<double> vs(k);
  double mean = 0.0;
  for (int i = 0; i < k; ++i) {
    vs[i] = rng.uniform(-2.0, 2.0);
    mean += vs[i];
  }
  mean /= k;
  Cluster acc{0.0, 0.1, 1.0 / k, vs[0], 1, 1};
  for (int i = 1; i < k; ++i) {
    Cluster next{acc.right_edge(), 0.1, 1.0 / k, vs[i], i + 1, i + 1};
    acc = merge(acc, next);
  }
  CHECK(acc.velocity == doctest::Approx(mean).epsilon(1e-14));
}

TEST_CASE("next_collision: kinematics, quiescent system, simultaneity group") {
  std::vector<Cluster> cs(2);
  cs[0] = {0.0, 0.25, 0.0, 1.0, 1, 1};
  cs[1] = {0.75, 0.25, 0.0, 0.0, 2, 2};
  ParticleSystem sys = ParticleSystem::from_clusters(2, 0.5, cs);
  auto nc = sys.next_collision();
  REQUIRE(nc.has_value());
  CHECK(nc->dt == doctest::Approx(0.5).epsilon(1e-14));  // gap 0.5 closed at speed 1
  REQUIRE(nc->pairs.size() == 1);
  CHECK(nc->pairs[0] == 0);

  std::vector<Cluster> same(3);
  same[0] = {0.0, 0.1, 0.0, 2.0, 1, 1};
  same[1] = {0.5, 0.1, 0.0, 2.0, 2, 2};
  same[2] = {1.0, 0.1, 0.0, 2.0, 3, 3};
  CHECK_FALSE(ParticleSystem::from_clusters(3, 0.3, same).next_collision().has_value());

  // symmetric squeeze: both pairs meet at the same instant
  std::vector<Cluster> sym(3);
  sym[0] = {-1.1, 0.1, 0.0, 1.0, 1, 1};
  sym[1] = {-0.05, 0.1, 0.0, 0.0, 2, 2};
  sym[2] = {1.0, 0.1, 0.0, -1.0, 3, 3};
  auto group = ParticleSystem::from_clusters(3, 0.3, sym).next_collision();
  REQUIRE(group.has_value());
  CHECK(group->pairs.size() == 2);
}

TEST_CASE("advance_to: translation, symmetric merge, permanence") {
  std::vector<Cluster> cs(2);
  cs[0] = {0.0, 0.2, 0.0, -1.0, 1, 1};
  cs[1] = {1.0, 0.2, 0.0, 1.0, 2, 2};  // receding
  ParticleSystem sys = ParticleSystem::from_clusters(2, 0.4, cs);
  sys.advance_to(2.0);
  CHECK(sys.clusters().size() == 2);
  CHECK(sys.clusters()[0].left_edge == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(sys.collision_log().empty());

  std::vector<Cluster> head(2);
  head[0] = {-1.0, 0.2, 0.0, 1.0, 1, 1};
  head[1] = {0.8, 0.2, 0.0, -1.0, 2, 2};
  ParticleSystem hs = ParticleSystem::from_clusters(2, 0.4, head);
  hs.advance_to(2.0);  // contact at t = 0.8, symmetric
  REQUIRE(hs.clusters().size() == 1);
  CHECK(hs.clusters()[0].velocity == 0.0);
  CHECK(hs.clusters()[0].left_edge == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(hs.time() == 2.0);
  REQUIRE(hs.collision_log().size() == 1);
  CHECK(hs.collision_log()[0].time == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("advance_to agrees with a fixed-step integrator oracle") {
  SplitMix64 rng(404);
  const int N = 50;
  const double eps = 0.5, t_final = 2.0;
  auto cs = random_singletons(rng, N, eps, 10.0, 1.0);

  std::vector<oracle::StepCluster> ref(N);
  for (int i = 0; i < N; ++i)
    ref[i] = {cs[i].left_edge, eps / N, 1.0 / N, cs[i].velocity, i + 1, i + 1};
  const auto expect = oracle::step_simulate(ref, t_final, 1e-5);

  ParticleSystem sys = ParticleSystem::from_clusters(N, eps, cs);
  sys.advance_to(t_final);
  REQUIRE(sys.clusters().size() == expect.size());
  CHECK(sys.collision_log().size() > 0);
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(sys.clusters()[i].first == expect[i].first);
    CHECK(sys.clusters()[i].last == expect[i].last);
    CHECK(std::abs(sys.clusters()[i].left_edge - expect[i].left) <= 1e-3);
  }
}

TEST_CASE("profiles: block indicators and mass capture") {
  std::vector<Cluster> cs(2);
  cs[0] = {0.0, 0.25, 0.0, 1.0, 1, 1};
  cs[1] = {0.6, 0.25, 0.0, -1.0, 2, 2};
  ParticleSystem sys = ParticleSystem::from_clusters(2, 0.5, cs);

  const GridFunction rho = sys.density_profile(-0.5, 1.5, 400);
  const GridFunction u = sys.velocity_profile(-0.5, 1.5, 400);
  CHECK(std::abs(integral(rho) - 1.0) <= 2.0 * rho.spacing() / 0.5 + 1e-12);  // h/eps per block
  for (int j = 0; j <= 400; ++j) {
    const double x = rho.node(j);
    const bool in0 = x >= 0.0 && x <= 0.25;
    const bool in1 = x >= 0.6 && x <= 0.85;
    CHECK(rho.values[j] == (in0 || in1 ? 2.0 : 0.0));
    CHECK(u.values[j] == (in0 ? 1.0 : (in1 ? -1.0 : 0.0)));
  }
}

TEST_CASE("psi_tilde: closed forms and eps-convexity") {
  // single cluster carrying all mass on [a, a + eps]
  const double eps = 0.5, a = -0.3;
  std::vector<Cluster> one(1);
  one[0] = {a, eps, 0.0, 0.7, 1, 4};
  ParticleSystem sys = ParticleSystem::from_clusters(4, eps, one);
  const int n = 256;
  const GridFunction psi = sys.psi_tilde(n);
  for (int j = 0; j <= n; ++j) {
    const double m = psi.node(j);
    CHECK(std::abs(psi.values[j] - (a * m + 0.5 * eps * m * m)) <= 1e-12);
  }

  // two half-mass clusters: piecewise quadratic with a kink at m = 1/2
  std::vector<Cluster> two(2);
  const double a1 = -0.8, a2 = 0.4;
  two[0] = {a1, 0.25, 0.0, 1.0, 1, 2};
  two[1] = {a2, 0.25, 0.0, -1.0, 3, 4};
  ParticleSystem pair = ParticleSystem::from_clusters(4, eps, two);
  const GridFunction psi2 = pair.psi_tilde(n);
  for (int j = 0; j <= n; ++j) {
    const double m = psi2.node(j);
    double expect;
    if (m <= 0.5) {
      expect = a1 * m + 0.5 * eps * m * m;
    } else {
      const double half = a1 * 0.5 + 0.5 * eps * 0.25;
      const double dm = m - 0.5;
      expect = half + a2 * dm + 0.5 * eps * dm * dm;
    }
    CHECK(std::abs(psi2.values[j] - expect) <= 1e-10);
  }

  SplitMix64 rng(77);
  auto cs = random_singletons(rng, 32, eps, 4.0, 1.5);
  ParticleSystem rsys = ParticleSystem::from_clusters(32, eps, cs);
  rsys.advance_to(1.0);
  const GridFunction psir = rsys.psi_tilde(512);
  CHECK(is_eps_convex(psir, eps, 1e-8 * std::max(1.0, psir.max_abs())));
}

TEST_CASE("conservation laws and determinism across event sequences") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 5; ++trial) {
    const int N = 64;
    auto cs = random_singletons(rng, N, 0.5, 6.0, 1.0);
    ParticleSystem sys = ParticleSystem::from_clusters(N, 0.5, cs);
    const double p0 = sys.momentum();

    ParticleSystem replay = ParticleSystem::from_clusters(N, 0.5, cs);
    size_t prev_count = sys.clusters().size();
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      sys.advance_to(t);
      replay.advance_to(t);
      CHECK(std::abs(sys.momentum() - p0) <= 1e-12);
      CHECK(sys.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(sys.clusters().size() <= prev_count);
      prev_count = sys.clusters().size();
      int covered = 0;
      for (const auto& c : sys.clusters()) covered += c.count();
      CHECK(covered == N);
      for (size_t i = 0; i + 1 < sys.clusters().size(); ++i)
        CHECK(sys.clusters()[i + 1].left_edge - sys.clusters()[i].right_edge() >= -1e-12);
    }

    REQUIRE(replay.collision_log().size() == sys.collision_log().size());
    for (size_t e = 0; e < replay.collision_log().size(); ++e) {
      CHECK(replay.collision_log()[e].time == sys.collision_log()[e].time);
      CHECK(replay.collision_log()[e].merged == sys.collision_log()[e].merged);
    }
  }
}

TEST_CASE("initial data validation catches bad inputs") {
  auto rho = GridFunction::sample(0.0, 1.0, 64, [](double) { return 1.0; });
  auto u = GridFunction::sample(0.0, 1.0, 64, [](double) { return 0.0; });
  CHECK_THROWS_AS(validate(InitialData{rho, u, 1.5}), std::invalid_argument);  // 1 >= 1/1.5

  auto unnormalized = GridFunction::sample(0.0, 1.0, 64, [](double) { return 2.0; });
  CHECK_THROWS_AS(validate(InitialData{unnormalized, u, 0.5}), std::invalid_argument);

  auto negative = GridFunction::sample(0.0, 1.0, 64, [](double x) { return x < 0.5 ? 2.1 : -0.1; });
  CHECK_THROWS_AS(validate(InitialData{negative, u, 0.25}), std::invalid_argument);

  auto mismatched = GridFunction::sample(0.0, 2.0, 64, [](double) { return 0.0; });
  CHECK_THROWS_AS(validate(InitialData{rho, mismatched, 0.5}), std::invalid_argument);
}
