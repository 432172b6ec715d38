#pragma once

// Brute-force lattice oracles. Every supremum reported here is a maximum over
// finitely many lattice points, i.e. a lower bound of the true supremum; none
// of these values is a certificate.

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "epigauge/epi_core.hpp"

namespace epigauge {

/// Largest lattice (base points, or base x level pairs) an oracle will scan.
inline constexpr std::uint64_t kLatticeCap = 100'000'000;

/// Worker count for lattice scans. Results do not depend on it.
struct Exec {
  unsigned threads = 1;
};

/// Cube lattice { i*h : i in Z^n, |i_k| <= floor(radius/h) } restricted to the
/// closed ball of the given radius. Halving the step gives a superset.
class Grid {
 public:
  Grid(std::size_t dim, double radius, double step);

  std::size_t dim() const noexcept { return dim_; }
  double radius() const noexcept { return radius_; }
  double step() const noexcept { return step_; }
  /// Number of cube lattice nodes before the ball filter.
  std::uint64_t cube_size() const noexcept { return cube_size_; }
  std::int64_t half_width() const noexcept { return half_width_; }

  Grid refined() const { return Grid(dim_, radius_, step_ / 2.0); }

  /// Writes the coordinates of cube node `index` (lexicographic order, first
  /// coordinate most significant) into `out`; false if outside the ball.
  bool node(std::uint64_t index, std::span<double> out) const;

  /// All ball lattice points in lexicographic order.
  std::vector<Point> points() const;

 private:
  std::size_t dim_;
  double radius_;
  double step_;
  std::int64_t half_width_;
  std::uint64_t cube_size_;
};

/// Levels { j*h_t } within [-M, M] plus both endpoints, ascending.
class LevelGrid {
 public:
  LevelGrid(double M, double step);

  double M() const noexcept { return M_; }
  double step() const noexcept { return step_; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  LevelGrid refined() const { return LevelGrid(M_, step_ / 2.0); }

 private:
  double M_;
  double step_;
  std::vector<double> levels_;
};

/// Closed ball B(center, radius); intervals [a, b] are balls in one dimension.
struct BallSet {
  Point center;
  double radius;
};

/// A minimizer set: either finitely many points or a closed ball.
using ArgminSet = std::variant<std::vector<Point>, BallSet>;

ArgminSet interval_set(double a, double b);

double dist_to_set(const Point& x, const ArgminSet& set);
bool argmin_set_empty(const ArgminSet& set) noexcept;

/// max over the lattice of |f - g|.
double grid_sup_abs_diff(const Func& f, const Func& g, const Grid& grid, Exec exec = {});

/// max over lattice x levels of |(f - t)_+ - (g - t)_+|.
double grid_gauge(const Func& f, const Func& g, const Grid& grid, const LevelGrid& levels, Exec exec = {});

struct GridArgmin {
  double value;
  std::vector<Point> points;  // every lattice point within kTau of value, lexicographic
};

GridArgmin grid_argmin(const Func& f, const Grid& grid, Exec exec = {});

/// Splits [0, total) into contiguous chunks, one per worker, and runs
/// body(begin, end, chunk) on each. Chunk order is fixed, so callers that merge
/// chunk results in chunk order stay deterministic.
void parallel_chunks(std::uint64_t total, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body);

/// Number of chunks parallel_chunks will use for the given size.
unsigned chunk_count(std::uint64_t total, unsigned threads) noexcept;

}  // namespace epigauge
