#pragma once

// Vertical distance-to-epigraph map, the localized cylinder and the
// elementary transfer inequalities between value and epigraphic control.

#include <cmath>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "epigauge/error.hpp"

namespace epigauge {

/// Absolute slack used when asserting certified inequalities in floating point.
inline constexpr double kTau = 1e-12;

/// A point of R^n with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}
  static Point origin(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double norm() const noexcept;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

double norm(std::span<const double> x) noexcept;
double distance(std::span<const double> a, std::span<const double> b);

/// Ball membership with a relative slack of kTau on the radius, so lattice
/// points computed as i*h do not fall out of a ball they lie on analytically.
bool in_ball(std::span<const double> x, double radius) noexcept;

/// A pure, deterministic real-valued function defined on the closed ball
/// B(0, domain_radius). Evaluation outside the ball, or a non-finite value,
/// is a hard error. Copies share the underlying kernel.
class Func {
 public:
  using Kernel = std::function<double(std::span<const double>)>;

  Func(std::string label, double domain_radius, Kernel kernel);

  double operator()(std::span<const double> x) const;
  double operator()(const Point& x) const { return (*this)(x.coords()); }

  double domain_radius() const noexcept { return domain_radius_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
  double domain_radius_;
  std::shared_ptr<const Kernel> kernel_;
};

/// The cylinder C_{R,M} = { (x,t) : ||x|| <= R, |t| <= M }.
struct Cylinder {
  double R;
  double M;

  Cylinder(double base_radius, double level_bound);
  bool contains_level(double value) const noexcept { return value >= -M && value <= M; }
};

enum class Provenance { ValueBound, Envelope, ToleranceField, Assumed };

const char* to_string(Provenance p) noexcept;

/// A scalar bound delta on the localized vertical epigraphic gauge over a
/// cylinder. `certified` is false when delta came from a finite scan of a
/// family that is not grid-exact; such values are lower bounds of the true
/// supremum and are labelled as estimates in `detail`.
struct GaugeBound {
  double delta;
  Cylinder cylinder;
  Provenance provenance;
  bool certified;
  std::string detail;
};

inline double pos_part(double r) noexcept { return r > 0.0 ? r : 0.0; }

/// (f_value - t)_+, the vertical gap from (x, t) up to the epigraph at fixed x.
inline double vertical_distance(double f_value, double t) noexcept { return pos_part(f_value - t); }

/// |(fa - t)_+ - (fb - t)_+|.
///
/// Evaluated by case split on the position of t rather than by subtracting
/// the two gaps: each branch is a single rounded subtraction whose exact value
/// never exceeds |fa - fb|, so the floating-point result never exceeds the
/// rounded |fa - fb| either (rounding is monotone).
double pointwise_discrepancy(double fa, double fb, double t) noexcept;

/// Turns a certified local uniform value bound sup_{||x||<=R} |F - G| <= eps
/// into a gauge bound with the same delta.
GaugeBound gauge_from_value_bound(double eps, const Cylinder& cyl);

/// A caller-asserted gauge bound with no certificate behind it.
GaugeBound assumed_gauge(double delta, const Cylinder& cyl, std::string why);

/// The gauge integrand at base point x along the given levels.
std::vector<double> discrepancy_profile(const Func& f, const Func& g, const Point& x,
                                        std::span<const double> t_samples);

}  // namespace epigauge
