#include "epigauge/stability.hpp"

#include <cmath>
#include <sstream>

namespace epigauge {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void GrowthCert::validate(const Func* f) const {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidArgument, "growth parameter mu must be positive");
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::InvalidArgument, "growth radius must be positive");
  require(std::isfinite(inf_value), ErrorKind::InvalidArgument, "inf_value must be finite");
  require(!argmin_set_empty(argmin_set), ErrorKind::InvalidArgument, "argmin set must be nonempty");
  if (!f) return;
  if (const auto* pts = std::get_if<std::vector<Point>>(&argmin_set)) {
    for (const auto& p : *pts) {
      const double v = (*f)(p);
      require(std::fabs(v - inf_value) <= kTau, ErrorKind::Inconsistent,
              "listed minimizer has F = " + fmt(v) + " but inf_value = " + fmt(inf_value));
    }
  } else {
    const double v = (*f)(std::get<BallSet>(argmin_set).center);
    require(std::fabs(v - inf_value) <= kTau, ErrorKind::Inconsistent,
            "argmin ball center has F = " + fmt(v) + " but inf_value = " + fmt(inf_value));
  }
}

WindowCheck WindowCheck::evaluate(const Func& f, const Func& g, const Point& x, const Cylinder& cyl) {
  WindowCheck c{x, f(x), g(x), false, false};
  c.in_base = in_ball(x.coords(), cyl.R);
  c.in_level = cyl.contains_level(c.f_value) && cyl.contains_level(c.g_value);
  return c;
}

bool WindowCheck::reverify(const Cylinder& cyl) const {
  return in_base == in_ball(point.coords(), cyl.R) &&
         in_level == (cyl.contains_level(f_value) && cyl.contains_level(g_value));
}

std::string WindowCheck::failure() const {
  std::string s;
  if (!in_base) s += "base window: ||x|| = " + fmt(point.norm()) + " exceeds R";
  if (!in_level) {
    if (!s.empty()) s += "; ";
    s += "level window: F(x) = " + fmt(f_value) + ", G(x) = " + fmt(g_value) + " not both in [-M, M]";
  }
  return s;
}

ValueGap value_gap_from_gauge(const GaugeBound& gauge, const WindowCheck& check) {
  const std::string why = check.failure();
  if (!why.empty()) return {std::nullopt, why};
  return {gauge.delta, {}};
}

double displacement_radius(double delta, double mu) {
  require(mu > 0.0 && std::isfinite(mu), ErrorKind::InvalidArgument, "growth parameter mu must be positive");
  require(delta >= 0.0 && std::isfinite(delta), ErrorKind::InvalidArgument, "gauge bound delta must be nonnegative");
  return 2.0 * std::sqrt(delta / mu);
}

DisplacementCert displacement_bound(const GaugeBound& gauge, const GrowthCert& growth, const Point& xstar,
                                    const Point& xtilde, const Func& f, const Func& g, MinimizerSource source) {
  growth.validate();
  const double bound = displacement_radius(gauge.delta, growth.mu);
  const Cylinder& cyl = gauge.cylinder;

  DisplacementCert cert{bound, 0.0, {}, gauge, growth, xstar, xtilde,
                        {WindowCheck::evaluate(f, g, xstar, cyl), WindowCheck::evaluate(f, g, xtilde, cyl)},
                        {}, dist_to_set(xtilde, growth.argmin_set), true, {}};

  if (source.kind == MinimizerSource::Kind::GridArgmin) {
    const double h = source.grid_step;
    require(h > 0.0 && std::isfinite(h), ErrorKind::InvalidArgument, "grid argmin step must be positive");
    cert.slack = 2.0 * h;
    cert.slack_detail = "x~* is a lattice argmin with step h = " + fmt(h) + "; reported bound adds 2h";
    if (gauge.delta > 0.0) {
      const double aware = 2.0 * h * (1.0 + std::sqrt(growth.mu / gauge.delta) * h);
      cert.slack_detail += "; growth-aware slack 2h(1 + sqrt(mu/delta) h) = " + fmt(aware);
    }
  } else {
    cert.slack_detail = "x~* supplied as an exact minimizer over B(0, R)";
  }

  if (dist_to_set(xstar, growth.argmin_set) > kTau) cert.failures.push_back("x* is not in the argmin set");
  if (growth.radius + kTau < cyl.R) cert.failures.push_back("growth certified on a smaller ball than B(0, R)");
  const char* labels[] = {"at x*: ", "at x~*: "};
  for (std::size_t i = 0; i < cert.window_checks.size(); ++i) {
    const std::string why = cert.window_checks[i].failure();
    if (!why.empty()) cert.failures.push_back(labels[i] + why);
  }
  if (!gauge.certified) cert.failures.push_back("gauge bound is not certified (" + gauge.detail + ")");

  const double d = gauge.delta;
  const auto& [at_star, at_tilde] = cert.window_checks;
  auto add = [&](std::string name, double lhs, double rhs) {
    cert.chain.push_back({std::move(name), lhs, rhs, lhs <= rhs + kTau});
  };
  add("G(x*) <= F(x*) + delta", at_star.g_value, at_star.f_value + d);
  add("F(x~*) <= G(x~*) + delta", at_tilde.f_value, at_tilde.g_value + d);
  add("G(x~*) <= G(x*)", at_tilde.g_value, at_star.g_value);
  add("F(x~*) - inf F <= 2 delta", at_tilde.f_value - growth.inf_value, 2.0 * d);
  for (const auto& c : cert.chain)
    if (!c.holds) cert.failures.push_back("chain inequality fails: " + c.name);

  cert.valid = cert.failures.empty();
  return cert;
}

bool DisplacementCert::reverify() const {
  const Cylinder& cyl = gauge.cylinder;
  for (const auto& w : window_checks) {
    if (!in_ball(w.point.coords(), cyl.R)) return false;
    if (!cyl.contains_level(w.f_value) || !cyl.contains_level(w.g_value)) return false;
  }
  return true;
}

GrowthReport falsify_quadratic_growth(const Func& f, const GrowthCert& growth, const Cylinder& cyl, std::size_t dim,
                                      double grid_step, Exec exec) {
  require(!argmin_set_empty(growth.argmin_set), ErrorKind::InvalidArgument, "argmin set must be nonempty");
  require(grid_step > 0.0 && std::isfinite(grid_step), ErrorKind::InvalidArgument, "grid step must be positive");
  const Grid grid(dim, std::min(cyl.R, growth.radius), grid_step);
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<GrowthReport> partial(chunks);
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      ++partial[c].points_checked;
      const Point p(x);
      const double excess = f(p) - growth.inf_value;
      const double dist = dist_to_set(p, growth.argmin_set);
      const double required = 0.5 * growth.mu * dist * dist;
      if (excess < required - kTau) partial[c].violations.push_back({p, excess, required});
    }
  });
  GrowthReport out;
  for (auto& p : partial) {
    out.points_checked += p.points_checked;
    for (auto& v : p.violations) out.violations.push_back(std::move(v));
  }
  return out;
}

}  // namespace epigauge
