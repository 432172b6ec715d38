#include "epigauge/epi_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epigauge {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  require(!coords_.empty(), ErrorKind::InvalidArgument, "point must have at least one coordinate");
  for (double c : coords_)
    require(std::isfinite(c), ErrorKind::InvalidArgument, "point coordinates must be finite");
}

double Point::norm() const noexcept { return epigauge::norm(coords_); }

double norm(std::span<const double> x) noexcept {
  if (x.size() == 1) return std::fabs(x[0]);
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::InvalidArgument, "dimension mismatch in distance");
  if (a.size() == 1) return std::fabs(a[0] - b[0]);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool in_ball(std::span<const double> x, double radius) noexcept {
  return norm(x) <= radius * (1.0 + kTau);
}

Func::Func(std::string label, double domain_radius, Kernel kernel)
    : label_(std::move(label)),
      domain_radius_(domain_radius),
      kernel_(std::make_shared<const Kernel>(std::move(kernel))) {
  require(domain_radius_ > 0.0 && !std::isnan(domain_radius_), ErrorKind::InvalidArgument,
          "function '" + label_ + "': domain radius must be positive");
  require(static_cast<bool>(*kernel_), ErrorKind::InvalidArgument,
          "function '" + label_ + "': empty kernel");
}

double Func::operator()(std::span<const double> x) const {
  if (!in_ball(x, domain_radius_)) {
    std::ostringstream os;
    os.precision(17);
    os << "function '" << label_ << "' evaluated at ||x|| = " << norm(x)
       << " outside its domain radius " << domain_radius_;
    fail(ErrorKind::Domain, os.str());
  }
  double v = (*kernel_)(x);
  if (!std::isfinite(v)) fail(ErrorKind::Domain, "function '" + label_ + "' returned a non-finite value");
  return v;
}

Cylinder::Cylinder(double base_radius, double level_bound) : R(base_radius), M(level_bound) {
  require(R > 0.0 && std::isfinite(R), ErrorKind::InvalidArgument, "cylinder radius R must be positive");
  require(M > 0.0 && std::isfinite(M), ErrorKind::InvalidArgument, "cylinder level bound M must be positive");
}

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::ValueBound: return "value_bound";
    case Provenance::Envelope: return "envelope";
    case Provenance::ToleranceField: return "tolerance_field";
    case Provenance::Assumed: return "assumed";
  }
  return "unknown";
}

double pointwise_discrepancy(double fa, double fb, double t) noexcept {
  const bool a_above = fa > t;
  const bool b_above = fb > t;
  if (a_above && b_above) return std::fabs(fa - fb);
  if (a_above) return fa - t;  // fb <= t < fa, so fa - t <= fa - fb
  if (b_above) return fb - t;
  return 0.0;
}

GaugeBound gauge_from_value_bound(double eps, const Cylinder& cyl) {
  require(eps >= 0.0 && std::isfinite(eps), ErrorKind::InvalidArgument,
          "value bound eps must be finite and nonnegative");
  return {eps, cyl, Provenance::ValueBound, true,
          "uniform value bound on the base ball transferred through the 1-Lipschitz map u -> (u - t)_+"};
}

GaugeBound assumed_gauge(double delta, const Cylinder& cyl, std::string why) {
  require(delta >= 0.0 && std::isfinite(delta), ErrorKind::InvalidArgument,
          "assumed gauge bound must be finite and nonnegative");
  return {delta, cyl, Provenance::Assumed, false, "assumed, not certified: " + why};
}

std::vector<double> discrepancy_profile(const Func& f, const Func& g, const Point& x,
                                        std::span<const double> t_samples) {
  const double fx = f(x);
  const double gx = g(x);
  std::vector<double> out;
  out.reserve(t_samples.size());
  for (double t : t_samples) {
    require(std::isfinite(t), ErrorKind::InvalidArgument, "level samples must be finite");
    out.push_back(pointwise_discrepancy(fx, gx, t));
  }
  return out;
}

}  // namespace epigauge
