#pragma once

// Certificate patterns that yield a computable bound on the vertical gauge:
// bracketing envelopes, neighborhood-wise envelopes aggregated over a cover,
// and direct vertical tolerance fields.

#include <functional>
#include <optional>
#include <vector>

#include "epigauge/epi_core.hpp"
#include "epigauge/oracle.hpp"

namespace epigauge {

/// Envelopes lower <= upper certified on the ball B(0, region_radius).
///
/// `grid_exact` declares that the width upper - lower attains its supremum on
/// lattice nodes (constant width, or affine pieces with breakpoints on the
/// lattice). Without it, scanned widths are reported as estimates.
class EnvelopeCert {
 public:
  /// Validates lower <= upper on the lattice of the region with the given step.
  EnvelopeCert(std::size_t dim, double region_radius, Func lower, Func upper, double validation_step,
               bool grid_exact = false);

  std::size_t dim() const noexcept { return dim_; }
  double region_radius() const noexcept { return region_radius_; }
  const Func& lower() const noexcept { return lower_; }
  const Func& upper() const noexcept { return upper_; }
  bool grid_exact() const noexcept { return grid_exact_; }

 private:
  std::size_t dim_;
  double region_radius_;
  Func lower_;
  Func upper_;
  bool grid_exact_;
};

/// sup over the base lattice of (upper - lower), as a gauge bound valid for every M.
GaugeBound envelope_width_bound(const EnvelopeCert& cert, const Cylinder& cyl, double grid_step, Exec exec = {});

struct BracketingViolation {
  Point x;
  double lower;
  double value;
  double upper;
};

struct BracketingReport {
  std::string candidate;
  std::size_t points_checked = 0;
  std::vector<BracketingViolation> violations;
  bool passed() const noexcept { return violations.empty(); }
};

/// Lattice points of the base ball where lower <= candidate <= upper fails
/// (beyond kTau). Passing is a statement about the lattice only.
BracketingReport validate_bracketing(const EnvelopeCert& cert, const Func& candidate, const Cylinder& cyl,
                                     double grid_step);

/// Envelopes certified on the closed ball B(center, radius).
class LocalCert {
 public:
  /// Validates lower <= upper on a lattice of D_i; a nonpositive step uses radius / 50.
  LocalCert(Point center, double radius, Func lower, Func upper, double validation_step = 0.0);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  const Func& lower() const noexcept { return lower_; }
  const Func& upper() const noexcept { return upper_; }
  bool active_at(std::span<const double> x) const { return distance(x, center_.coords()) <= radius_; }

 private:
  Point center_;
  double radius_;
  Func lower_;
  Func upper_;
};

class Cover {
 public:
  explicit Cover(std::vector<LocalCert> certs);

  const std::vector<LocalCert>& certs() const noexcept { return certs_; }
  std::size_t dim() const noexcept { return certs_.front().center().dim(); }
  bool covers(std::span<const double> x) const;

 private:
  std::vector<LocalCert> certs_;
};

struct Bracket {
  double lower;
  double upper;
};

/// Pointwise max of active lower envelopes and min of active upper envelopes.
/// Uncovered points are Domain errors; an empty bracket (lower > upper) is an
/// Inconsistent error and is never repaired.
class CoverEnvelope {
 public:
  explicit CoverEnvelope(Cover cover);

  Bracket operator()(std::span<const double> x) const;
  Bracket operator()(const Point& x) const { return (*this)(x.coords()); }
  const Cover& cover() const noexcept { return cover_; }

  /// Aggregated envelopes as Funcs, for use as an EnvelopeCert.
  Func lower_func() const;
  Func upper_func() const;

 private:
  Cover cover_;
  double reach_;
};

CoverEnvelope aggregate_cover(Cover cover);

/// eta(x, t) >= 0 bounding the gauge integrand pointwise on the cylinder.
struct ToleranceField {
  std::function<double(std::span<const double>, double)> eta;
  Cylinder cylinder;
  bool grid_exact = false;
};

/// max of eta over the (x, t) lattice on the cylinder. A negative eta value is
/// an Inconsistent error.
GaugeBound gauge_from_tolerance_field(const ToleranceField& tf, std::size_t dim, double grid_step_x,
                                      double grid_step_t, Exec exec = {});

}  // namespace epigauge
