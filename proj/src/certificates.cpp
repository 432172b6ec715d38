#include "epigauge/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace epigauge {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_point(std::span<const double> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + fmt(x[i]);
  return s + ")";
}

// Scans a lattice of B(center, radius) and reports the first point where lower > upper.
void check_ordered(const Func& lower, const Func& upper, std::span<const double> center, double radius,
                   double step, const std::string& what) {
  Grid grid(center.size(), radius, step);
  std::vector<double> local(center.size()), x(center.size());
  for (std::uint64_t i = 0; i < grid.cube_size(); ++i) {
    if (!grid.node(i, local)) continue;
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = center[d] + local[d];
    const double lo = lower(x);
    const double hi = upper(x);
    if (lo > hi + kTau)
      fail(ErrorKind::Inconsistent, what + ": lower envelope " + fmt(lo) + " exceeds upper envelope " + fmt(hi) +
                                        " at " + fmt_point(x));
  }
}

}  // namespace

EnvelopeCert::EnvelopeCert(std::size_t dim, double region_radius, Func lower, Func upper, double validation_step,
                           bool grid_exact)
    : dim_(dim), region_radius_(region_radius), lower_(std::move(lower)), upper_(std::move(upper)),
      grid_exact_(grid_exact) {
  require(dim_ >= 1, ErrorKind::InvalidArgument, "envelope dimension must be at least 1");
  require(region_radius_ > 0.0 && std::isfinite(region_radius_), ErrorKind::InvalidArgument,
          "envelope region radius must be positive");
  require(region_radius_ <= lower_.domain_radius() && region_radius_ <= upper_.domain_radius(),
          ErrorKind::InvalidArgument, "envelope region exceeds the envelopes' domain");
  require(validation_step > 0.0, ErrorKind::InvalidArgument, "envelope validation step must be positive");
  const std::vector<double> origin(dim_, 0.0);
  check_ordered(lower_, upper_, origin, region_radius_, validation_step, "envelope certificate");
}

GaugeBound envelope_width_bound(const EnvelopeCert& cert, const Cylinder& cyl, double grid_step, Exec exec) {
  require(grid_step > 0.0 && std::isfinite(grid_step), ErrorKind::InvalidArgument, "grid step must be positive");
  require(cyl.R <= cert.region_radius(), ErrorKind::Precondition,
          "cylinder radius " + fmt(cyl.R) + " exceeds the certified region radius " + fmt(cert.region_radius()));
  const Grid grid(cert.dim(), cyl.R, grid_step);
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<double> partial(chunks, -std::numeric_limits<double>::infinity());
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      const double width = cert.upper()(x) - cert.lower()(x);
      if (width < -kTau)
        fail(ErrorKind::Inconsistent, "envelope width " + fmt(width) + " is negative at " + fmt_point(x));
      best = std::max(best, width);
    }
    partial[c] = best;
  });
  const double width = pos_part(*std::max_element(partial.begin(), partial.end()));
  std::string detail = "sup of upper - lower over the base lattice (h = " + fmt(grid_step) + ")";
  detail += cert.grid_exact() ? "; envelopes declared grid-exact" : "; grid estimate (lower bound of true sup)";
  return {width, cyl, Provenance::Envelope, cert.grid_exact(), std::move(detail)};
}

BracketingReport validate_bracketing(const EnvelopeCert& cert, const Func& candidate, const Cylinder& cyl,
                                     double grid_step) {
  require(grid_step > 0.0 && std::isfinite(grid_step), ErrorKind::InvalidArgument, "grid step must be positive");
  require(cyl.R <= cert.region_radius() && cyl.R <= candidate.domain_radius(), ErrorKind::Domain,
          "base ball of radius " + fmt(cyl.R) + " is not inside the certified region and the domain of '" +
              candidate.label() + "'");
  const Grid grid(cert.dim(), cyl.R, grid_step);
  BracketingReport report{candidate.label(), 0, {}};
  std::vector<double> x(grid.dim());
  for (std::uint64_t i = 0; i < grid.cube_size(); ++i) {
    if (!grid.node(i, x)) continue;
    ++report.points_checked;
    const double lo = cert.lower()(x);
    const double v = candidate(x);
    const double hi = cert.upper()(x);
    if (v < lo - kTau || v > hi + kTau) report.violations.push_back({Point(x), lo, v, hi});
  }
  return report;
}

LocalCert::LocalCert(Point center, double radius, Func lower, Func upper, double validation_step)
    : center_(std::move(center)), radius_(radius), lower_(std::move(lower)), upper_(std::move(upper)) {
  require(radius_ > 0.0 && std::isfinite(radius_), ErrorKind::InvalidArgument, "local certificate radius must be positive");
  const double reach = center_.norm() + radius_;
  require(reach <= lower_.domain_radius() * (1.0 + kTau) && reach <= upper_.domain_radius() * (1.0 + kTau),
          ErrorKind::InvalidArgument, "local certificate neighborhood exceeds its envelopes' domain");
  const double step = validation_step > 0.0 ? validation_step : radius_ / 50.0;
  check_ordered(lower_, upper_, center_.coords(), radius_, step, "local certificate at " + fmt_point(center_.coords()));
}

Cover::Cover(std::vector<LocalCert> certs) : certs_(std::move(certs)) {
  require(!certs_.empty(), ErrorKind::InvalidArgument, "a cover needs at least one local certificate");
  for (const auto& c : certs_)
    require(c.center().dim() == dim(), ErrorKind::InvalidArgument, "local certificates of mixed dimension");
}

bool Cover::covers(std::span<const double> x) const {
  return std::any_of(certs_.begin(), certs_.end(), [&](const LocalCert& c) { return c.active_at(x); });
}

CoverEnvelope::CoverEnvelope(Cover cover) : cover_(std::move(cover)), reach_(0.0) {
  for (const auto& c : cover_.certs()) reach_ = std::max(reach_, c.center().norm() + c.radius());
}

Bracket CoverEnvelope::operator()(std::span<const double> x) const {
  require(x.size() == cover_.dim(), ErrorKind::InvalidArgument, "cover evaluated at a point of wrong dimension");
  Bracket b{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  bool active = false;
  for (const auto& c : cover_.certs()) {
    if (!c.active_at(x)) continue;
    active = true;
    b.lower = std::max(b.lower, c.lower()(x));
    b.upper = std::min(b.upper, c.upper()(x));
  }
  if (!active) fail(ErrorKind::Domain, "point " + fmt_point(x) + " is not in any certified neighborhood");
  if (b.lower > b.upper)
    fail(ErrorKind::Inconsistent, "inconsistent cover at " + fmt_point(x) + ": aggregated lower " + fmt(b.lower) +
                                      " exceeds aggregated upper " + fmt(b.upper));
  return b;
}

Func CoverEnvelope::lower_func() const {
  return Func("cover_lower", reach_, [self = *this](std::span<const double> x) { return self(x).lower; });
}

Func CoverEnvelope::upper_func() const {
  return Func("cover_upper", reach_, [self = *this](std::span<const double> x) { return self(x).upper; });
}

CoverEnvelope aggregate_cover(Cover cover) { return CoverEnvelope(std::move(cover)); }

GaugeBound gauge_from_tolerance_field(const ToleranceField& tf, std::size_t dim, double grid_step_x,
                                      double grid_step_t, Exec exec) {
  require(static_cast<bool>(tf.eta), ErrorKind::InvalidArgument, "tolerance field has no eta");
  const Grid grid(dim, tf.cylinder.R, grid_step_x);
  const LevelGrid levels(tf.cylinder.M, grid_step_t);
  const auto& ts = levels.levels();
  if (static_cast<double>(grid.cube_size()) * static_cast<double>(ts.size()) > static_cast<double>(kLatticeCap))
    fail(ErrorKind::OracleCap, "tolerance field lattice exceeds the point cap");
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    double best = 0.0;
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      for (double t : ts) {
        const double v = tf.eta(x, t);
        if (!(v >= 0.0) || !std::isfinite(v))
          fail(ErrorKind::Inconsistent, "tolerance field value " + fmt(v) + " at x = " + fmt_point(x) +
                                            ", t = " + fmt(t) + " is not a finite nonnegative number");
        best = std::max(best, v);
      }
    }
    partial[c] = best;
  });
  const double delta = *std::max_element(partial.begin(), partial.end());
  std::string detail = "sup of eta over the cylinder lattice (h = " + fmt(grid_step_x) + ", h_t = " +
                       fmt(grid_step_t) + ")";
  detail += tf.grid_exact ? "; eta declared grid-exact" : "; grid estimate (lower bound of true sup)";
  return {delta, tf.cylinder, Provenance::ToleranceField, tf.grid_exact, std::move(detail)};
}

}  // namespace epigauge
