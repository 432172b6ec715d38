#include "epigauge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace epigauge {

namespace {

std::int64_t lattice_half_width(double radius, double step) {
  double k = std::floor(radius / step + 1e-9);
  require(k < 1e9, ErrorKind::OracleCap, "lattice step too small for the radius");
  return static_cast<std::int64_t>(k);
}

void check_cap(std::uint64_t points, const char* what) {
  if (points > kLatticeCap)
    fail(ErrorKind::OracleCap, std::string(what) + ": lattice of " + std::to_string(points) +
                                   " points exceeds the cap of " + std::to_string(kLatticeCap));
}

}  // namespace

Grid::Grid(std::size_t dim, double radius, double step) : dim_(dim), radius_(radius), step_(step) {
  require(dim_ >= 1, ErrorKind::InvalidArgument, "grid dimension must be at least 1");
  require(radius_ > 0.0 && std::isfinite(radius_), ErrorKind::InvalidArgument, "grid radius must be positive");
  require(step_ > 0.0 && std::isfinite(step_), ErrorKind::InvalidArgument, "grid step must be positive");
  half_width_ = lattice_half_width(radius_, step_);
  const double per_axis = 2.0 * static_cast<double>(half_width_) + 1.0;
  const double total = std::pow(per_axis, static_cast<double>(dim_));
  if (total > static_cast<double>(kLatticeCap)) check_cap(std::numeric_limits<std::uint64_t>::max(), "grid");
  cube_size_ = 1;
  for (std::size_t d = 0; d < dim_; ++d) cube_size_ *= static_cast<std::uint64_t>(per_axis);
}

bool Grid::node(std::uint64_t index, std::span<double> out) const {
  const auto per_axis = static_cast<std::uint64_t>(2 * half_width_ + 1);
  for (std::size_t d = dim_; d-- > 0;) {
    const auto digit = static_cast<std::int64_t>(index % per_axis);
    index /= per_axis;
    out[d] = static_cast<double>(digit - half_width_) * step_;
  }
  return in_ball(out, radius_);
}

std::vector<Point> Grid::points() const {
  std::vector<Point> pts;
  std::vector<double> x(dim_);
  for (std::uint64_t i = 0; i < cube_size_; ++i)
    if (node(i, x)) pts.emplace_back(x);
  return pts;
}

LevelGrid::LevelGrid(double M, double step) : M_(M), step_(step) {
  require(M_ > 0.0 && std::isfinite(M_), ErrorKind::InvalidArgument, "level bound M must be positive");
  require(step_ > 0.0 && std::isfinite(step_), ErrorKind::InvalidArgument, "level step must be positive");
  const std::int64_t k = lattice_half_width(M_, step_);
  check_cap(static_cast<std::uint64_t>(2 * k + 3), "level grid");
  levels_.reserve(static_cast<std::size_t>(2 * k + 3));
  levels_.push_back(-M_);
  for (std::int64_t j = -k; j <= k; ++j) levels_.push_back(std::clamp(static_cast<double>(j) * step_, -M_, M_));
  levels_.push_back(M_);
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
}

ArgminSet interval_set(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a <= b, ErrorKind::InvalidArgument,
          "interval argmin set needs finite a <= b");
  return BallSet{Point{0.5 * (a + b)}, 0.5 * (b - a)};
}

bool argmin_set_empty(const ArgminSet& set) noexcept {
  if (const auto* pts = std::get_if<std::vector<Point>>(&set)) return pts->empty();
  return false;
}

double dist_to_set(const Point& x, const ArgminSet& set) {
  if (const auto* pts = std::get_if<std::vector<Point>>(&set)) {
    require(!pts->empty(), ErrorKind::InvalidArgument, "distance to an empty set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : *pts) best = std::min(best, distance(x.coords(), p.coords()));
    return best;
  }
  const auto& ball = std::get<BallSet>(set);
  require(ball.radius >= 0.0, ErrorKind::InvalidArgument, "ball radius must be nonnegative");
  return pos_part(distance(x.coords(), ball.center.coords()) - ball.radius);
}

unsigned chunk_count(std::uint64_t total, unsigned threads) noexcept {
  if (total == 0) return 1;
  const std::uint64_t t = std::max(1u, threads);
  return static_cast<unsigned>(std::min<std::uint64_t>(t, total));
}

void parallel_chunks(std::uint64_t total, unsigned threads,
                     const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body) {
  const unsigned chunks = chunk_count(total, threads);
  auto bounds = [&](unsigned c) { return total * c / chunks; };
  if (chunks == 1) {
    body(0, total, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    workers.emplace_back([&, c] {
      try {
        body(bounds(c), bounds(c + 1), c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double grid_sup_abs_diff(const Func& f, const Func& g, const Grid& grid, Exec exec) {
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    double best = 0.0;
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      best = std::max(best, std::fabs(f(x) - g(x)));
    }
    partial[c] = best;
  });
  return *std::max_element(partial.begin(), partial.end());
}

double grid_gauge(const Func& f, const Func& g, const Grid& grid, const LevelGrid& levels, Exec exec) {
  const auto& ts = levels.levels();
  const double pairs = static_cast<double>(grid.cube_size()) * static_cast<double>(ts.size());
  if (pairs > static_cast<double>(kLatticeCap)) check_cap(std::numeric_limits<std::uint64_t>::max(), "gauge");
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    double best = 0.0;
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      const double fx = f(x);
      const double gx = g(x);
      for (double t : ts) best = std::max(best, pointwise_discrepancy(fx, gx, t));
    }
    partial[c] = best;
  });
  return *std::max_element(partial.begin(), partial.end());
}

GridArgmin grid_argmin(const Func& f, const Grid& grid, Exec exec) {
  struct Partial {
    double min = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::uint64_t, double>> candidates;
  };
  const unsigned chunks = chunk_count(grid.cube_size(), exec.threads);
  std::vector<Partial> partial(chunks);
  parallel_chunks(grid.cube_size(), exec.threads, [&](std::uint64_t b, std::uint64_t e, unsigned c) {
    std::vector<double> x(grid.dim());
    Partial& p = partial[c];
    for (std::uint64_t i = b; i < e; ++i) {
      if (!grid.node(i, x)) continue;
      const double v = f(x);
      if (v < p.min - kTau) {
        p.min = v;
        p.candidates.clear();
      } else if (v < p.min) {
        p.min = v;
      }
      if (v <= p.min + kTau) p.candidates.emplace_back(i, v);
    }
    // drop candidates made stale by later, lower values in this chunk
    std::erase_if(p.candidates, [&](const auto& cand) { return cand.second > p.min + kTau; });
  });

  GridArgmin out{std::numeric_limits<double>::infinity(), {}};
  for (const auto& p : partial) out.value = std::min(out.value, p.min);
  require(std::isfinite(out.value), ErrorKind::InvalidArgument, "grid argmin over an empty lattice");
  std::vector<double> x(grid.dim());
  for (const auto& p : partial)
    for (const auto& [index, v] : p.candidates)
      if (v <= out.value + kTau) {
        grid.node(index, x);
        out.points.emplace_back(x);
      }
  return out;
}

}  // namespace epigauge
