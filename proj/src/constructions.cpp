#include "epigauge/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epigauge/families.hpp"
#include "epigauge/format.hpp"

namespace epigauge {

SharpnessFamily build_sharpness_pair(double mu, double delta, double domain_radius) {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidArgument, "sharpness family needs mu > 0");
  require(delta > 0.0 && std::isfinite(delta), ErrorKind::InvalidArgument, "sharpness family needs delta > 0");
  Func f = families::quadratic(0.5 * mu, Point{0.0}, 0.0, domain_radius);
  Func g = families::clamp_shift(f, delta);
  return {mu, delta, std::move(f), std::move(g)};
}

StrictnessPair build_strictness_pair(double R, double M, double A) {
  require(R > 0.0 && M > 0.0 && A > 0.0, ErrorKind::InvalidArgument, "strictness pair needs R, M, A > 0");
  const double level = -(M + 1.0);
  return {R, M, A, families::constant(level, R), families::constant(level - A, R)};
}

ImpossibilityPair build_impossibility_pair(double R, std::vector<Point> queries, double A, std::optional<Point> y,
                                           double search_step) {
  require(R > 0.0 && std::isfinite(R), ErrorKind::InvalidArgument, "impossibility pair needs R > 0");
  require(A >= 0.0 && std::isfinite(A), ErrorKind::InvalidArgument, "impossibility pair needs A >= 0");
  require(!queries.empty(), ErrorKind::InvalidArgument, "impossibility pair needs at least one query point");
  const std::size_t dim = queries.front().dim();
  for (const auto& q : queries) {
    require(q.dim() == dim, ErrorKind::InvalidArgument, "query points of mixed dimension");
    require(in_ball(q.coords(), R), ErrorKind::Precondition, "query point outside B(0, R)");
  }
  auto nearest = [&](std::span<const double> p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : queries) best = std::min(best, distance(p, q.coords()));
    return best;
  };

  if (!y) {
    const Grid grid(dim, R, search_step > 0.0 ? search_step : R / 100.0);
    std::vector<double> x(dim);
    double best = -1.0;
    for (std::uint64_t i = 0; i < grid.cube_size(); ++i) {
      if (!grid.node(i, x)) continue;
      const double d = nearest(x);
      if (d > best) {
        best = d;
        y = Point(x);
      }
    }
  }
  require(y->dim() == dim, ErrorKind::InvalidArgument, "y has the wrong dimension");
  require(in_ball(y->coords(), R), ErrorKind::Precondition, "y outside B(0, R)");
  const double rho = 0.5 * nearest(y->coords());
  require(rho > 0.0, ErrorKind::Precondition, "no point y away from the queries was found (rho = 0)");

  Func f = families::constant(0.0, R);
  Func g = families::bump(A, *y, rho, R);
  return {R, std::move(queries), *y, rho, A, std::move(f), std::move(g)};
}

double ols_slope(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument, "slope fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  require(sxx > 0.0, ErrorKind::InvalidArgument, "slope fit needs distinct abscissae");
  return sxy / sxx;
}

SweepTable sharpness_sweep(double mu, const std::vector<double>& deltas, double grid_step, double radius,
                           Exec exec) {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidArgument, "sweep needs mu > 0");
  require(!deltas.empty(), ErrorKind::InvalidArgument, "sweep needs at least one delta");
  require(grid_step > 0.0 && std::isfinite(grid_step), ErrorKind::InvalidArgument, "sweep grid step must be positive");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    require(deltas[i] > 0.0 && std::isfinite(deltas[i]), ErrorKind::InvalidArgument, "sweep deltas must be positive");
    require(i == 0 || deltas[i - 1] < deltas[i], ErrorKind::InvalidArgument, "sweep deltas must be strictly increasing");
  }
  const double resolve = std::sqrt(2.0 * deltas.front() / mu) / 10.0;
  require(grid_step < resolve, ErrorKind::Precondition,
          "grid step " + format_number(grid_step) + " too coarse for the smallest delta; need h < " +
              format_number(resolve));
  require(std::sqrt(2.0 * deltas.back() / mu) < radius, ErrorKind::Precondition,
          "largest minimizer interval sqrt(2 delta/mu) does not fit in the sweep radius");

  SweepTable table{mu, grid_step, radius, std::vector<SweepRow>(deltas.size()), std::nullopt};
  const Grid grid(1, radius, grid_step);
  const ArgminSet origin = std::vector<Point>{Point{0.0}};
  // deltas are independent; within a row the lattice scan runs serially so
  // rows can be spread over workers.
  parallel_chunks(deltas.size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned) {
    for (std::uint64_t i = b; i < e; ++i) {
      const SharpnessFamily fam = build_sharpness_pair(mu, deltas[i], radius);
      const GridArgmin am = grid_argmin(fam.g, grid);
      double extreme = 0.0;
      for (const auto& p : am.points)
        if (std::fabs(p[0]) > std::fabs(extreme)) extreme = p[0];
      table.rows[i] = {deltas[i], extreme, dist_to_set(Point{extreme}, origin),
                       2.0 * std::sqrt(deltas[i] / mu), 2.0 * grid_step, fam.extreme_minimizer()};
    }
  });
  if (table.rows.size() >= 2) {
    std::vector<double> lx, ly;
    for (const auto& r : table.rows) {
      require(r.dist > 0.0, ErrorKind::Precondition, "zero displacement at delta " + format_number(r.delta));
      lx.push_back(std::log(r.delta));
      ly.push_back(std::log(r.dist));
    }
    table.slope = ols_slope(lx, ly);
  }
  return table;
}

std::string SweepTable::to_csv() const {
  std::string out = "delta,argmin,dist,bound,slack\n";
  for (const auto& r : rows)
    out += format_number(r.delta) + "," + format_number(r.argmin) + "," + format_number(r.dist) + "," +
           format_number(r.bound) + "," + format_number(r.slack) + "\n";
  return out;
}

}  // namespace epigauge
