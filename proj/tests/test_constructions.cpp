#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "epigauge/constructions.hpp"

using namespace epigauge;

TEST_CASE("build_sharpness_pair") {
  const SharpnessFamily s = build_sharpness_pair(2.0, 0.02);
  CHECK(s.extreme_minimizer() == doctest::Approx(0.1414213562373095).epsilon(1e-15));
  CHECK(s.g(Point{s.extreme_minimizer() * (1 - 1e-9)}) == 0.0);
  CHECK(s.g(Point{0.15}) > 0.0);
  CHECK(build_sharpness_pair(2.0, 1e-12).extreme_minimizer() < 1e-5);
  CHECK_THROWS_AS(build_sharpness_pair(0.0, 0.1), Error);
  CHECK_THROWS_AS(build_sharpness_pair(1.0, -0.1), Error);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point x{u(rng)};
    const double d = s.f(x) - s.g(x);
    CHECK(d >= 0.0);
    CHECK(d <= s.delta + kTau);
    CHECK((s.g(x) == 0.0) == s.in_argmin(x[0]));
  }
  for (double R : {0.1, 0.5, 1.0})
    for (double M : {0.01, 0.1, 1.0}) CHECK(grid_gauge(s.f, s.g, Grid(1, R, R / 500), LevelGrid(M, M / 200)) <= 0.02 + kTau);
}

TEST_CASE("build_strictness_pair") {
  const StrictnessPair p = build_strictness_pair(1.0, 2.0, 5.0);
  CHECK(p.f(Point{0.0}) == -3.0);
  CHECK(p.g(Point{0.5}) == -8.0);
  const Grid grid(1, 1.0, 0.01);
  const LevelGrid levels(2.0, 0.01);
  CHECK(grid_gauge(p.f, p.g, grid, levels) == 0.0);
  CHECK(grid_sup_abs_diff(p.f, p.g, grid) == 5.0);
  // t = -M is the closest level to the pair and still above both values
  CHECK(pointwise_discrepancy(p.f(Point{0.0}), p.g(Point{0.0}), -2.0) == 0.0);
  for (const auto& x : grid.points())
    for (double t : levels.levels()) REQUIRE(pointwise_discrepancy(p.f(x), p.g(x), t) == 0.0);
  CHECK_THROWS_AS(build_strictness_pair(1.0, 2.0, 0.0), Error);
}

TEST_CASE("build_impossibility_pair") {
  const ImpossibilityPair p = build_impossibility_pair(1.0, {Point{-0.5}, Point{0.5}}, 10.0, Point{0.0});
  CHECK(p.rho == 0.25);
  CHECK(p.g(Point{0.0}) == 10.0);
  CHECK(p.g(Point{-0.5}) == 0.0);
  CHECK(p.g(Point{0.5}) == 0.0);
  for (const auto& q : p.queries) CHECK(p.f(q) == p.g(q));

  SUBCASE("Lipschitz constant A / rho") {
    const auto pts = Grid(1, 1.0, 1e-3).points();
    double slope = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      slope = std::max(slope, std::fabs(p.g(pts[i]) - p.g(pts[i - 1])) / (pts[i][0] - pts[i - 1][0]));
    CHECK(slope <= 10.0 / 0.25 + 1e-9);
    CHECK(slope >= 0.99 * 10.0 / 0.25);
  }
  SUBCASE("A = 0 collapses the pair") {
    const ImpossibilityPair z = build_impossibility_pair(1.0, {Point{-0.5}, Point{0.5}}, 0.0, Point{0.0});
    CHECK(grid_sup_abs_diff(z.f, z.g, Grid(1, 1.0, 0.01)) == 0.0);
  }
  SUBCASE("auto y maximizes the distance to the queries") {
    const ImpossibilityPair a = build_impossibility_pair(1.0, {Point{-0.5}, Point{0.5}}, 10.0);
    CHECK(a.rho == doctest::Approx(0.25));
    CHECK(a.g(a.y) == 10.0);
    const ImpossibilityPair b = build_impossibility_pair(1.0, {Point{0.2, 0.1}, Point{-0.3, 0.4}, Point{0.0, -0.6}}, 3.0);
    CHECK(b.rho > 0.0);
    for (const auto& q : b.queries) CHECK(b.g(q) == 0.0);
  }
  SUBCASE("random query sets interpolate exactly") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Point> qs;
      for (int i = 0; i < 1 + trial % 7; ++i) qs.push_back(Point{u(rng)});
      const ImpossibilityPair r = build_impossibility_pair(1.0, qs, 1.0 + 100.0 * std::fabs(u(rng)));
      for (const auto& q : r.queries) REQUIRE(r.g(q) == 0.0);
      CHECK(std::fabs(r.f(r.y) - r.g(r.y)) == r.A);
    }
  }
  CHECK_THROWS_AS(build_impossibility_pair(1.0, {Point{0.0}}, 1.0, Point{0.0}), Error);
  CHECK_THROWS_AS(build_impossibility_pair(1.0, {Point{2.0}}, 1.0), Error);
  CHECK_THROWS_AS(build_impossibility_pair(1.0, {}, 1.0), Error);
}

TEST_CASE("sharpness_sweep") {
  SUBCASE("single delta") {
    const double h = 1e-4;
    const SweepTable t = sharpness_sweep(2.0, {0.02}, h);
    REQUIRE(t.rows.size() == 1);
    CHECK_FALSE(t.slope.has_value());
    CHECK(std::fabs(t.rows[0].dist - std::sqrt(0.02)) <= h);
    CHECK(t.rows[0].bound == doctest::Approx(0.2).epsilon(1e-15));
  }
  SUBCASE("log-spaced deltas") {
    std::vector<double> deltas;
    for (int i = 0; i < 8; ++i) deltas.push_back(std::pow(10.0, -5.0 + 3.0 * i / 7.0));
    const SweepTable t = sharpness_sweep(2.0, deltas, 1e-5);
    REQUIRE(t.slope.has_value());
    CHECK(*t.slope >= 0.48);
    CHECK(*t.slope <= 0.52);
    for (const auto& r : t.rows) {
      CHECK(r.dist <= r.bound);
      CHECK(std::fabs(r.dist - r.analytic) <= 1e-5);
    }
    const std::string csv = t.to_csv();
    CHECK(csv.rfind("delta,argmin,dist,bound,slack\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  }
  CHECK_THROWS_AS(sharpness_sweep(2.0, {1e-5}, 1e-3), Error);  // step too coarse
  CHECK_THROWS_AS(sharpness_sweep(2.0, {1e-3, 1e-4}, 1e-6), Error);  // unsorted
  CHECK_THROWS_AS(sharpness_sweep(2.0, {2.0}, 1e-3), Error);  // minimizer interval leaves the ball
  CHECK(ols_slope(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 5}) == doctest::Approx(2.0));
}
