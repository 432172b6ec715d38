#include "epigauge/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epigauge::families {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_finite(double v, const char* what) {
  require(std::isfinite(v), ErrorKind::InvalidArgument, std::string(what) + " must be finite");
}

}  // namespace

Func constant(double value, double domain_radius) {
  check_finite(value, "constant value");
  return Func("constant(" + num(value) + ")", domain_radius,
              [value](std::span<const double>) { return value; });
}

Func affine(std::vector<double> slope, double offset, double domain_radius) {
  require(!slope.empty(), ErrorKind::InvalidArgument, "affine slope must be nonempty");
  for (double s : slope) check_finite(s, "affine slope");
  check_finite(offset, "affine offset");
  return Func("affine", domain_radius, [slope = std::move(slope), offset](std::span<const double> x) {
    require(x.size() == slope.size(), ErrorKind::InvalidArgument, "affine: dimension mismatch");
    double v = offset;
    for (std::size_t i = 0; i < x.size(); ++i) v += slope[i] * x[i];
    return v;
  });
}

Func quadratic(double scale, Point center, double offset, double domain_radius) {
  check_finite(scale, "quadratic scale");
  check_finite(offset, "quadratic offset");
  return Func("quadratic(" + num(scale) + ")", domain_radius,
              [scale, center = std::move(center), offset](std::span<const double> x) {
                double s = 0.0;
                auto c = center.coords();
                require(x.size() == c.size(), ErrorKind::InvalidArgument, "quadratic: dimension mismatch");
                for (std::size_t i = 0; i < x.size(); ++i) {
                  double d = x[i] - c[i];
                  s += d * d;
                }
                return scale * s + offset;
              });
}

Func power(double scale, double exponent, Point center, double offset, double domain_radius) {
  check_finite(scale, "power scale");
  check_finite(offset, "power offset");
  require(exponent > 0.0 && std::isfinite(exponent), ErrorKind::InvalidArgument,
          "power exponent must be positive");
  return Func("power(" + num(scale) + "," + num(exponent) + ")", domain_radius,
              [scale, exponent, center = std::move(center), offset](std::span<const double> x) {
                return scale * std::pow(distance(x, center.coords()), exponent) + offset;
              });
}

Func bump(double amplitude, Point center, double rho, double domain_radius) {
  check_finite(amplitude, "bump amplitude");
  require(rho > 0.0 && std::isfinite(rho), ErrorKind::InvalidArgument, "bump radius rho must be positive");
  return Func("bump(" + num(amplitude) + "," + num(rho) + ")", domain_radius,
              [amplitude, center = std::move(center), rho](std::span<const double> x) {
                return amplitude * std::max(0.0, 1.0 - distance(x, center.coords()) / rho);
              });
}

Func clamp_shift(Func inner, double shift) {
  check_finite(shift, "clamp_shift delta");
  const double radius = inner.domain_radius();
  std::string label = "(" + inner.label() + " - " + num(shift) + ")_+";
  return Func(std::move(label), radius,
              [inner = std::move(inner), shift](std::span<const double> x) { return pos_part(inner(x) - shift); });
}

Func sum(std::vector<Func> terms) {
  require(!terms.empty(), ErrorKind::InvalidArgument, "sum needs at least one term");
  double radius = terms.front().domain_radius();
  std::string label = "sum(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    radius = std::min(radius, terms[i].domain_radius());
    label += (i ? "," : "") + terms[i].label();
  }
  label += ")";
  return Func(std::move(label), radius, [terms = std::move(terms)](std::span<const double> x) {
    double v = 0.0;
    for (const auto& t : terms) v += t(x);
    return v;
  });
}

Func scale(Func inner, double factor) {
  check_finite(factor, "scale factor");
  const double radius = inner.domain_radius();
  std::string label = num(factor) + "*" + inner.label();
  return Func(std::move(label), radius,
              [inner = std::move(inner), factor](std::span<const double> x) { return factor * inner(x); });
}

}  // namespace epigauge::families
