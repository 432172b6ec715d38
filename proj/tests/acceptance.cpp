// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances are pinned here and nowhere else.

#include <algorithm>
#include <array>
#include <cfloat>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "epigauge/certificates.hpp"
#include "epigauge/commands.hpp"
#include "epigauge/constructions.hpp"
#include "epigauge/families.hpp"
#include "epigauge/oracle.hpp"
#include "epigauge/stability.hpp"

using namespace epigauge;

namespace {

constexpr double kSweepStep = 1e-5;        // h for criteria 1-2 (<= 1e-4 required)
constexpr double kSlopeLo = 0.48, kSlopeHi = 0.52;
constexpr double kRuntimeLimit = 60.0;     // seconds, single thread
constexpr double kRatioTol = 0.01;
constexpr double kTheoremTol = 1e-12;
constexpr double kImpossibilityTol = 1e-12;
constexpr int kTheoremInstances = 10000;
constexpr int kSamplesPerInstance = 20;
constexpr int kFuzzTriples = 100000;
constexpr double kNaiveRoundingUlps = 4.0;  // naive form only: two rounded subtractions
constexpr int kOraclePairs = 100;
constexpr int kHalvings = 3;
constexpr int kCovers = 100;
constexpr int kCoverSamples = 1000;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  [%d] %s  (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <class... Args>
std::string str(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

using Rng = std::mt19937_64;

double uni(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Point random_point(Rng& rng, std::size_t dim, double r) {
  for (;;) {
    std::vector<double> c(dim);
    for (auto& v : c) v = uni(rng, -r, r);
    Point p(std::move(c));
    if (p.norm() <= r) return p;
  }
}

// A random analytic function on B(0, dom): a sum of two or three named families.
Func random_analytic(Rng& rng, std::size_t dim, double dom) {
  std::vector<Func> terms;
  const int n = 2 + static_cast<int>(rng() % 2);
  for (int i = 0; i < n; ++i) {
    switch (rng() % 4) {
      case 0:
        terms.push_back(families::quadratic(uni(rng, -3, 3), random_point(rng, dim, 1.0), uni(rng, -2, 2), dom));
        break;
      case 1: {
        std::vector<double> s(dim);
        for (auto& v : s) v = uni(rng, -2, 2);
        terms.push_back(families::affine(s, uni(rng, -1, 1), dom));
        break;
      }
      case 2:
        terms.push_back(families::power(uni(rng, -2, 2), uni(rng, 0.5, 3.0), random_point(rng, dim, 1.0),
                                        uni(rng, -1, 1), dom));
        break;
      default:
        terms.push_back(families::bump(uni(rng, -3, 3), random_point(rng, dim, 1.0), uni(rng, 0.1, 1.0), dom));
    }
  }
  return families::sum(std::move(terms));
}

void sweep_criteria() {
  const double mu = 2.0;
  const auto deltas = log_spaced(1e-5, 1e-2, 8);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepTable table = sharpness_sweep(mu, deltas, kSweepStep, 1.0, Exec{1});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double worst_match = 0.0;
  for (const auto& r : table.rows) worst_match = std::max(worst_match, std::fabs(r.dist - r.analytic));
  const double slope = table.slope.value_or(std::nan(""));
  report(1, "sharpness exponent: argmin within h of sqrt(2 delta/mu), slope in [0.48, 0.52], <= 60 s",
         worst_match <= kSweepStep && slope >= kSlopeLo && slope <= kSlopeHi && secs <= kRuntimeLimit,
         str(table.rows.size(), " deltas, h = ", kSweepStep, ", max |dist - analytic| = ", worst_match,
             ", slope = ", slope, ", ", secs, " s"));

  bool below = true;
  double worst_ratio = 0.0;
  for (const auto& r : table.rows) {
    below = below && r.dist <= r.bound + 2.0 * kSweepStep;
    worst_ratio = std::max(worst_ratio, std::fabs(r.dist / r.bound - 1.0 / std::sqrt(2.0)));
  }
  const auto& smallest = table.rows.front();
  report(2, "displacement bound never violated; dist/bound -> 1/sqrt(2)",
         below && worst_ratio <= kRatioTol,
         str("max |dist/bound - 1/sqrt2| = ", worst_ratio, " over all rows; at delta = ", smallest.delta,
             " ratio = ", smallest.dist / smallest.bound));
}

void strictness_criterion() {
  const StrictnessPair pair = build_strictness_pair(1.0, 2.0, 5.0);
  const Grid grid(1, 1.0, 1e-3);
  const LevelGrid levels(2.0, 1e-3);
  const double gauge = grid_gauge(pair.f, pair.g, grid, levels);
  const double sup = grid_sup_abs_diff(pair.f, pair.g, grid);
  report(3, "strictness: grid gauge exactly 0, grid sup |f - g| exactly 5", gauge == 0.0 && sup == 5.0,
         str("gauge = ", gauge, ", sup = ", sup));
}

void impossibility_criterion() {
  const ImpossibilityPair pair = build_impossibility_pair(1.0, {Point{-0.5}, Point{0.5}}, 10.0, Point{0.0});
  bool exact = true;
  for (const auto& q : pair.queries) exact = exact && pair.f(q) == 0.0 && pair.g(q) == 0.0;
  double worst = HUGE_VAL;
  for (double h : {0.1, 0.01, 1e-3, 0.3, 0.07}) {  // every lattice i*h contains y = 0
    worst = std::min(worst, grid_sup_abs_diff(pair.f, pair.g, Grid(1, 1.0, h)));
  }
  report(4, "impossibility: zero residual at queries, grid sup >= A on lattices through y",
         exact && worst >= 10.0 - kImpossibilityTol, str("rho = ", pair.rho, ", min lattice sup = ", worst));
}

// Instances F~ = clamp(F~0, F - delta, F + delta), so delta bounds the gauge.
void theorem_criterion() {
  Rng rng(20240501);
  long checked = 0, windowed = 0, violations = 0, library_violations = 0, gauge_violations = 0;
  for (int k = 0; k < kTheoremInstances; ++k) {
    const std::size_t dim = 1 + rng() % 3;
    const double R = uni(rng, 0.2, 2.0);
    const double M = uni(rng, 0.1, 4.0);
    const double delta = std::pow(10.0, uni(rng, -6, 0));
    const double dom = 1.5 * R;
    const Func F = random_analytic(rng, dim, dom);
    const Func F0 = random_analytic(rng, dim, dom);
    const Func Ft("clamp", dom, [F, F0, delta](std::span<const double> x) {
      const double f = F(x);
      return std::clamp(F0(x), f - delta, f + delta);
    });
    const Cylinder cyl(R, M);
    const GaugeBound gauge = gauge_from_value_bound(delta, cyl);
    for (int s = 0; s < kSamplesPerInstance; ++s) {
      const Point x = random_point(rng, dim, R);
      const double a = F(x), b = Ft(x);
      ++checked;
      const bool window = cyl.contains_level(a) && cyl.contains_level(b);
      if (!window) continue;
      ++windowed;
      if (std::fabs(a - b) > delta + kTheoremTol) ++violations;
      // local form: the integrand at the bottom level already bounds the gap
      if (std::fabs(a - b) > pointwise_discrepancy(a, b, -M) + kTheoremTol) ++violations;
      const ValueGap gap = value_gap_from_gauge(gauge, WindowCheck::evaluate(F, Ft, x, cyl));
      if (!gap.valid() || std::fabs(a - b) > *gap.bound + kTheoremTol) ++library_violations;
    }
    if (dim == 1 && k % 50 == 0) {  // the lattice gauge of the pair is a lower bound of delta
      if (grid_gauge(F, Ft, Grid(1, R, R / 200), LevelGrid(M, M / 50)) > delta + kTheoremTol) ++gauge_violations;
    }
  }
  report(5, "theorem property suite: |F - F~| <= delta whenever both values are in the window",
         violations == 0 && library_violations == 0 && gauge_violations == 0 && windowed > 0,
         str(kTheoremInstances, " instances, ", checked, " points, ", windowed, " in window, ", violations,
             " violations, ", library_violations, " library disagreements, ", gauge_violations,
             " lattice gauge excesses"));
}

// The gauge integrand goes through pointwise_discrepancy, whose case split makes
// the bound hold exactly in floating point. The naive composition of two rounded
// subtractions only holds up to rounding, so it gets a pinned allowance.
void lipschitz_criterion() {
  Rng rng(7);
  long violations = 0, naive_exact = 0, naive_beyond_rounding = 0;
  for (int k = 0; k < kFuzzTriples; ++k) {
    const double scale = std::pow(10.0, uni(rng, -8, 8));
    const double u = uni(rng, -1, 1) * scale;
    const double v = (rng() % 4 == 0) ? u + uni(rng, -1e-9, 1e-9) * scale : uni(rng, -1, 1) * scale;
    const double t = (rng() % 8 == 0) ? u : uni(rng, -1, 1) * scale;
    if (pointwise_discrepancy(u, v, t) > std::fabs(u - v)) ++violations;
    const double naive = std::fabs(vertical_distance(u, t) - vertical_distance(v, t));
    if (naive > std::fabs(u - v)) ++naive_exact;
    const double allowance = kNaiveRoundingUlps * DBL_EPSILON * std::max(std::fabs(u - t), std::fabs(v - t));
    if (naive > std::fabs(u - v) + allowance) ++naive_beyond_rounding;
  }
  report(6, "Lipschitz transfer: |(u-t)_+ - (v-t)_+| <= |u - v|", violations == 0 && naive_beyond_rounding == 0,
         str(kFuzzTriples, " triples, ", violations, " violations of the integrand map; naive composition: ",
             naive_exact, " exceed fl|u-v| by rounding, ", naive_beyond_rounding, " beyond ", kNaiveRoundingUlps,
             " eps"));
}

void oracle_criterion() {
  Rng rng(11);
  long order_violations = 0, monotone_violations = 0;
  for (int k = 0; k < kOraclePairs; ++k) {
    const std::size_t dim = 1 + rng() % 2;
    const double M = uni(rng, 0.5, 3.0);
    const Func f = random_analytic(rng, dim, 1.5);
    const Func g = random_analytic(rng, dim, 1.5);
    Grid grid(dim, 1.0, dim == 1 ? 0.02 : 0.1);
    LevelGrid levels(M, M / 10);
    double prev_gauge = -1.0, prev_sup = -1.0;
    for (int level = 0; level <= kHalvings; ++level) {
      const double gauge = grid_gauge(f, g, grid, levels, Exec{4});
      const double sup = grid_sup_abs_diff(f, g, grid, Exec{4});
      if (!(gauge <= sup)) ++order_violations;
      if (gauge < prev_gauge || sup < prev_sup) ++monotone_violations;
      prev_gauge = gauge;
      prev_sup = sup;
      grid = grid.refined();
      levels = levels.refined();
    }
  }
  report(7, "oracle consistency: grid gauge <= grid sup, monotone under nested halvings",
         order_violations == 0 && monotone_violations == 0,
         str(kOraclePairs, " pairs x ", kHalvings + 1, " lattices, ", order_violations, " order violations, ",
             monotone_violations, " monotonicity violations"));
}

// Local envelopes truth -/+ (a + c ||x - x_i||^2) on balls covering B(0, 1).
void aggregation_criterion() {
  Rng rng(3);
  long points = 0, bracket_violations = 0, tighten_violations = 0, active_total = 0;
  for (int k = 0; k < kCovers; ++k) {
    const std::size_t dim = 1 + rng() % 2;
    const double dom = 3.0;
    const Func truth = random_analytic(rng, dim, dom);
    const double s = uni(rng, 0.3, 0.6);
    std::vector<Point> centers;
    const int n = static_cast<int>(std::ceil(1.0 / s));
    if (dim == 1) {
      for (int i = -n; i <= n; ++i) centers.push_back(Point{i * s});
    } else {
      for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j) centers.push_back(Point{i * s, j * s});
    }
    for (int extra = 0; extra < 3; ++extra) centers.push_back(random_point(rng, dim, 1.0));

    std::vector<LocalCert> certs;
    for (const auto& c : centers) {
      const double radius = s * (dim == 1 ? 0.6 : 0.8) + uni(rng, 0.0, 0.3);
      const Func lo = families::sum({truth, families::quadratic(-uni(rng, 0, 2), c, -uni(rng, 0, 0.5), dom)});
      const Func hi = families::sum({truth, families::quadratic(uni(rng, 0, 2), c, uni(rng, 0, 0.5), dom)});
      certs.emplace_back(c, radius, lo, hi, radius / 10);
    }
    const CoverEnvelope env = aggregate_cover(Cover(std::move(certs)));
    for (int p = 0; p < kCoverSamples; ++p) {
      const Point x = random_point(rng, dim, 1.0);
      const Bracket b = env(x);
      const double v = truth(x);
      ++points;
      if (!(b.lower <= v && v <= b.upper)) ++bracket_violations;
      for (const auto& c : env.cover().certs()) {
        if (!c.active_at(x.coords())) continue;
        ++active_total;
        if (!(c.lower()(x) <= b.lower && b.upper <= c.upper()(x))) ++tighten_violations;
      }
    }
  }
  report(8, "cover aggregation brackets the truth and tightens every active certificate",
         bracket_violations == 0 && tighten_violations == 0,
         str(kCovers, " covers, ", points, " points, ", active_total, " active certificate checks, ",
             bracket_violations, " bracketing violations, ", tighten_violations, " tightening violations"));
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  const std::string cmd = std::string(EPIGAUGE_CLI) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

void determinism_criterion() {
  const std::string spec = std::string("--spec ") + EPIGAUGE_SPECS_DIR + "/sharpness.yaml";
  const Run serial = run_cli("certify " + spec);
  const Run parallel = run_cli("certify " + spec + " --threads 4");
  const bool same = !serial.out.empty() && strip_timestamp(serial.out) == strip_timestamp(parallel.out);
  report(9, "determinism: certify serial vs --threads 4 identical modulo timestamp",
         same && serial.status == 0 && parallel.status == 0,
         str("exit codes ", serial.status, "/", parallel.status, ", ", serial.out.size(), " bytes, ",
             same ? "identical" : "DIFFERENT"));
}

void guarded(const std::function<void()>& body, int id) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, "criterion raised", false, e.what());
  }
}

}  // namespace

int main() {
  guarded(sweep_criteria, 1);
  guarded(strictness_criterion, 3);
  guarded(impossibility_criterion, 4);
  guarded(theorem_criterion, 5);
  guarded(lipschitz_criterion, 6);
  guarded(oracle_criterion, 7);
  guarded(aggregation_criterion, 8);
  guarded(determinism_criterion, 9);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
