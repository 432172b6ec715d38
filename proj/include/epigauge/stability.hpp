#pragma once

// From a gauge bound to value control on the level window, and from value
// control plus set-based quadratic growth to a minimizer displacement bound.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "epigauge/epi_core.hpp"
#include "epigauge/oracle.hpp"

namespace epigauge {

/// Set-based quadratic growth F(x) - inf F >= (mu/2) dist(x, X*)^2 on B(0, radius).
/// `inf_value` is a certificate input and is never recomputed.
struct GrowthCert {
  double mu;
  double radius;
  ArgminSet argmin_set;
  double inf_value;

  /// Checks mu > 0, radius > 0, a nonempty set, and (when f is given) that
  /// listed minimizers attain inf_value within kTau.
  void validate(const Func* f = nullptr) const;
};

/// Window membership of one base point, computed from the stored values.
struct WindowCheck {
  Point point;
  double f_value;
  double g_value;
  bool in_base;
  bool in_level;

  static WindowCheck evaluate(const Func& f, const Func& g, const Point& x, const Cylinder& cyl);
  /// Recomputes both flags from the raw values.
  bool reverify(const Cylinder& cyl) const;
  std::string failure() const;  // empty when both flags hold
};

struct ValueGap {
  std::optional<double> bound;  // set when the window hypotheses hold
  std::string failure;          // names the failing hypothesis otherwise
  bool valid() const noexcept { return bound.has_value(); }
};

ValueGap value_gap_from_gauge(const GaugeBound& gauge, const WindowCheck& check);

/// How the surrogate minimizer was obtained.
struct MinimizerSource {
  enum class Kind { Exact, GridArgmin } kind = Kind::Exact;
  double grid_step = 0.0;

  static MinimizerSource exact() { return {}; }
  static MinimizerSource grid(double h) { return {Kind::GridArgmin, h}; }
};

/// The inequalities of the displacement argument, each checked with slack kTau.
struct ChainCheck {
  std::string name;
  double lhs;
  double rhs;
  bool holds;
};

struct DisplacementCert {
  double bound;       // 2 sqrt(delta / mu)
  double slack;       // 0 for exact minimizers, 2h for grid argmins
  std::string slack_detail;
  GaugeBound gauge;
  GrowthCert growth;
  Point xstar;
  Point xtilde;
  std::array<WindowCheck, 2> window_checks;  // at x* and at x~*; four values in total
  std::vector<ChainCheck> chain;
  double dist;        // dist(x~*, X*), informational
  bool valid;
  std::vector<std::string> failures;

  double reported_bound() const noexcept { return bound + slack; }
  /// Re-derives validity from the stored raw values: two ball memberships and
  /// four level memberships.
  bool reverify() const;
};

/// 2 sqrt(delta / mu).
double displacement_radius(double delta, double mu);

DisplacementCert displacement_bound(const GaugeBound& gauge, const GrowthCert& growth, const Point& xstar,
                                    const Point& xtilde, const Func& f, const Func& g,
                                    MinimizerSource source = MinimizerSource::exact());

struct GrowthViolation {
  Point x;
  double excess;  // F(x) - inf F
  double required;  // (mu/2) dist(x, X*)^2
};

struct GrowthReport {
  static constexpr const char* kHeader =
      "quadratic growth falsification scan: an empty list means not falsified on this lattice; it is not a certificate";
  std::size_t points_checked = 0;
  std::vector<GrowthViolation> violations;
  bool falsified() const noexcept { return !violations.empty(); }
};

GrowthReport falsify_quadratic_growth(const Func& f, const GrowthCert& growth, const Cylinder& cyl, std::size_t dim,
                                      double grid_step, Exec exec = {});

inline double suboptimality_gap(const Func& f, const Point& x, double inf_value) { return f(x) - inf_value; }

}  // namespace epigauge
