#pragma once

// Explicit pairs (F, G) with closed-form properties: the square-root
// sharpness family, the gauge-zero / value-gap-A pair, and the bump that
// agrees with zero at every query point.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "epigauge/epi_core.hpp"
#include "epigauge/oracle.hpp"

namespace epigauge {

/// F(x) = (mu/2) x^2 and G(x) = (F(x) - delta)_+ on the real line.
struct SharpnessFamily {
  double mu;
  double delta;
  Func f;
  Func g;

  /// sqrt(2 delta / mu), the largest minimizer of G.
  double extreme_minimizer() const { return std::sqrt(2.0 * delta / mu); }
  /// Closed-form membership in argmin G = [-sqrt(2 delta/mu), sqrt(2 delta/mu)].
  bool in_argmin(double x) const { return std::fabs(x) <= extreme_minimizer(); }
};

SharpnessFamily build_sharpness_pair(double mu, double delta, double domain_radius = 10.0);

/// F = -(M+1) and G = -(M+1) - A, constant on B(0, R).
struct StrictnessPair {
  double R;
  double M;
  double A;
  Func f;
  Func g;
};

StrictnessPair build_strictness_pair(double R, double M, double A);

/// F = 0 and G = A * max(0, 1 - ||x - y|| / rho) with rho = min_i ||y - x_i|| / 2.
struct ImpossibilityPair {
  double R;
  std::vector<Point> queries;
  Point y;
  double rho;
  double A;
  Func f;
  Func g;
};

/// With no y given, y is the first lattice point of B(0, R) (step `search_step`)
/// maximizing the distance to the nearest query.
ImpossibilityPair build_impossibility_pair(double R, std::vector<Point> queries, double A,
                                           std::optional<Point> y = std::nullopt, double search_step = 0.0);

struct SweepRow {
  double delta;
  double argmin;    // extreme lattice argmin of G
  double dist;      // its distance to X* = {0}
  double bound;     // 2 sqrt(delta / mu)
  double slack;     // 2h
  double analytic;  // sqrt(2 delta / mu)
};

struct SweepTable {
  double mu;
  double grid_step;
  double radius;
  std::vector<SweepRow> rows;
  std::optional<double> slope;  // OLS slope of log dist against log delta, when >= 2 rows

  /// CSV with header "delta,argmin,dist,bound,slack".
  std::string to_csv() const;
};

SweepTable sharpness_sweep(double mu, const std::vector<double>& deltas, double grid_step, double radius = 1.0,
                           Exec exec = {});

/// Least-squares slope of y against x.
double ols_slope(std::span<const double> x, std::span<const double> y);

}  // namespace epigauge
