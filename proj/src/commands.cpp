#include "epigauge/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "epigauge/certificates.hpp"
#include "epigauge/constructions.hpp"
#include "epigauge/format.hpp"
#include "epigauge/oracle.hpp"
#include "epigauge/stability.hpp"

namespace epigauge {

using Json = nlohmann::ordered_json;

int exit_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return kExitParse;
    case ErrorKind::InvalidArgument:
    case ErrorKind::Domain:
    case ErrorKind::Precondition: return kExitPrecondition;
    case ErrorKind::OracleCap: return kExitOracleCap;
    case ErrorKind::Inconsistent: return kExitInconsistent;
  }
  return kExitInternal;
}

namespace {

const std::string kOracleNote = "oracle values are lattice maxima: lower bounds of the true suprema, not certificates";

double grid_step(const ProblemSpec& spec, const RunOptions& o) { return o.grid_step.value_or(spec.grid_step); }
double level_step(const ProblemSpec& spec, const RunOptions& o) { return o.level_step.value_or(spec.level_step); }

Json point_json(const Point& p) { return Json(std::vector<double>(p.coords().begin(), p.coords().end())); }

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct ResolvedGauge {
  GaugeBound bound;
  std::vector<BracketingReport> bracketing;  // envelope-type certificates only
  bool bracketing_ok() const {
    return std::all_of(bracketing.begin(), bracketing.end(), [](const auto& r) { return r.passed(); });
  }
};

std::vector<BracketingReport> bracket_pair(const EnvelopeCert& cert, const ProblemSpec& spec, double h) {
  std::vector<BracketingReport> out;
  if (!spec.pair) return out;
  out.push_back(validate_bracketing(cert, spec.function(spec.pair->first), spec.cylinder, h));
  out.push_back(validate_bracketing(cert, spec.function(spec.pair->second), spec.cylinder, h));
  return out;
}

ResolvedGauge resolve_gauge(const ProblemSpec& spec, const RunOptions& o) {
  const double h = grid_step(spec, o);
  const Exec exec{o.threads};
  const auto& block = *spec.certificate;
  if (const auto* e = std::get_if<EnvelopeBlock>(&block)) {
    EnvelopeCert cert(spec.dim, e->region_radius, spec.function(e->lower), spec.function(e->upper), h, e->grid_exact);
    return {envelope_width_bound(cert, spec.cylinder, h, exec), bracket_pair(cert, spec, h)};
  }
  if (const auto* c = std::get_if<CoverBlock>(&block)) {
    std::vector<LocalCert> certs;
    for (const auto& l : c->certs)
      certs.emplace_back(l.center, l.radius, spec.function(l.lower), spec.function(l.upper), h);
    const CoverEnvelope agg = aggregate_cover(Cover(std::move(certs)));
    EnvelopeCert cert(spec.dim, spec.cylinder.R, agg.lower_func(), agg.upper_func(), h, c->grid_exact);
    ResolvedGauge r{envelope_width_bound(cert, spec.cylinder, h, exec), bracket_pair(cert, spec, h)};
    r.bound.detail = "aggregated cover of " + std::to_string(c->certs.size()) + " local certificates; " + r.bound.detail;
    return r;
  }
  if (const auto* t = std::get_if<ToleranceBlock>(&block)) {
    ToleranceField tf{[t](std::span<const double> x, double lvl) { return t->base + t->radial * norm(x) + t->level * std::fabs(lvl); },
                      spec.cylinder, t->grid_exact};
    return {gauge_from_tolerance_field(tf, spec.dim, h, level_step(spec, o), exec), {}};
  }
  if (const auto* v = std::get_if<ValueBoundBlock>(&block)) return {gauge_from_value_bound(v->eps, spec.cylinder), {}};
  const auto& a = std::get<AssumedBlock>(block);
  return {assumed_gauge(a.delta, spec.cylinder, a.reason), {}};
}

Json gauge_json(const GaugeBound& g) {
  return Json{{"delta", g.delta},
              {"provenance", to_string(g.provenance)},
              {"certified", g.certified},
              {"detail", g.detail}};
}

Json bracketing_json(const std::vector<BracketingReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) {
    Json item{{"candidate", r.candidate}, {"points_checked", r.points_checked}, {"violations", r.violations.size()}};
    if (!r.passed()) {
      const auto& v = r.violations.front();
      item["first_violation"] = Json{{"x", point_json(v.x)}, {"lower", v.lower}, {"value", v.value}, {"upper", v.upper}};
    }
    out.push_back(std::move(item));
  }
  return out;
}

Json window_json(const WindowCheck& w) {
  return Json{{"point", point_json(w.point)},
              {"f_value", w.f_value},
              {"g_value", w.g_value},
              {"in_base", w.in_base},
              {"in_level", w.in_level}};
}

Json argmin_json(const ArgminSet& set) {
  if (const auto* pts = std::get_if<std::vector<Point>>(&set)) {
    Json list = Json::array();
    for (const auto& p : *pts) list.push_back(point_json(p));
    return Json{{"points", list}};
  }
  const auto& b = std::get<BallSet>(set);
  return Json{{"ball", Json{{"center", point_json(b.center)}, {"radius", b.radius}}}};
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

// Two labelled columns: certified values on the left, lattice estimates on the right.
std::string gauge_table(const std::vector<std::tuple<std::string, std::optional<double>, std::optional<double>>>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "quantity" << std::setw(26) << "certified" << "oracle (lattice lower bound)\n";
  for (const auto& [name, cert, orc] : rows) os << std::setw(22) << name << std::setw(26) << cell(cert) << cell(orc) << "\n";
  return os.str();
}

std::vector<double> default_deltas() {
  std::vector<double> d;
  for (int i = 0; i < 8; ++i) d.push_back(std::pow(10.0, -5.0 + 3.0 * i / 7.0));
  return d;
}

struct Property {
  std::string name;
  bool pass;
  std::string value;
};

CommandResult property_result(const std::string& title, const std::vector<Property>& props, const std::string& extra,
                              const RunOptions& o, std::string csv = {}) {
  std::ostringstream os;
  os << title << "\n";
  bool all = true;
  std::string props_csv = "property,status,value\n";
  for (const auto& p : props) {
    os << (p.pass ? "PASS  " : "FAIL  ") << p.name << "  [" << p.value << "]\n";
    props_csv += "\"" + p.name + "\"," + (p.pass ? "pass" : "fail") + "," + p.value + "\n";
    all = all && p.pass;
  }
  os << extra;
  os << (all ? "all properties pass\n" : "some properties FAIL\n");
  CommandResult r;
  r.status = all ? kExitOk : kExitPrecondition;
  r.csv = csv.empty() ? props_csv : std::move(csv);
  r.output = o.csv ? r.csv : os.str();
  return r;
}

CommandResult demo_strictness(const DemoParams& p, const RunOptions& o) {
  const StrictnessPair pair = build_strictness_pair(p.R, p.M, p.A);
  const double h = o.grid_step.value_or(p.R / 100.0);
  const double ht = o.level_step.value_or(p.M / 100.0);
  const Grid grid(1, p.R, h);
  const double gauge = grid_gauge(pair.f, pair.g, grid, LevelGrid(p.M, ht), {o.threads});
  const double sup = grid_sup_abs_diff(pair.f, pair.g, grid, {o.threads});
  std::vector<Property> props{
      {"grid gauge over C_{R,M} is exactly 0", gauge == 0.0, format_number(gauge)},
      {"grid sup |f - g| is exactly A", sup == p.A, format_number(sup)},
  };
  std::string extra = "f = " + format_number(-(p.M + 1.0)) + ", g = " + format_number(-(p.M + 1.0) - p.A) + "\n" +
                      kOracleNote + "\n";
  return property_result("demo strictness: R = " + format_number(p.R) + ", M = " + format_number(p.M) +
                             ", A = " + format_number(p.A),
                         props, extra, o);
}

CommandResult demo_impossibility(const DemoParams& p, const RunOptions& o) {
  std::vector<Point> queries;
  for (double q : p.queries) queries.push_back(Point{q});
  if (queries.empty()) queries = {Point{-0.5}, Point{0.5}};
  std::optional<Point> y;
  if (p.y) y = Point{*p.y};
  const ImpossibilityPair pair = build_impossibility_pair(p.R, queries, p.A, y, o.grid_step.value_or(0.0));

  bool exact = true;
  std::string residuals;
  for (const auto& q : pair.queries) {
    const double fv = pair.f(q), gv = pair.g(q);
    exact = exact && fv == 0.0 && gv == 0.0;
    residuals += (residuals.empty() ? "" : " ") + format_number(gv - fv);
  }
  const double h = o.grid_step.value_or(pair.rho / 100.0);
  const Grid grid(1, p.R, h);
  const double lattice_sup = grid_sup_abs_diff(pair.f, pair.g, grid, {o.threads});
  const double at_y = std::fabs(pair.f(pair.y) - pair.g(pair.y));
  const double sup = std::max(lattice_sup, at_y);

  // finite-difference slopes between consecutive lattice points
  double slope = 0.0;
  const auto pts = grid.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dx = pts[i][0] - pts[i - 1][0];
    slope = std::max(slope, std::fabs(pair.g(pts[i]) - pair.g(pts[i - 1])) / dx);
  }
  const double lip = pair.A / pair.rho;
  std::vector<Property> props{
      {"f(x_i) = g(x_i) = 0 exactly at every query", exact, residuals},
      {"sup |f - g| >= A (attained at y)", sup >= p.A - kTau, format_number(sup)},
      {"g is (A/rho)-Lipschitz (finite-difference scan)", slope <= lip + kTau * std::max(1.0, lip), format_number(slope)},
  };
  std::string extra = "y = " + format_number(pair.y[0]) + ", rho = " + format_number(pair.rho) +
                      ", lattice sup = " + format_number(lattice_sup) + "\n" + kOracleNote + "\n";
  return property_result("demo impossibility: R = " + format_number(p.R) + ", A = " + format_number(p.A) + ", " +
                             std::to_string(pair.queries.size()) + " queries",
                         props, extra, o);
}

CommandResult demo_sharpness(const DemoParams& p, const RunOptions& o) {
  const std::vector<double> deltas = p.deltas.empty() ? default_deltas() : p.deltas;
  const double h = o.grid_step.value_or(1e-5);
  const SweepTable table = sharpness_sweep(p.mu, deltas, h, p.R, {o.threads});
  bool matches = true, below = true, gauge_ok = true;
  double worst_gauge = 0.0;
  const Grid coarse(1, p.R, std::max(h, p.R / 2000.0));
  const LevelGrid levels(1.0, o.level_step.value_or(1e-3));
  for (const auto& r : table.rows) {
    matches = matches && std::fabs(r.dist - r.analytic) <= h;
    below = below && r.dist <= r.bound + r.slack;
    const SharpnessFamily fam = build_sharpness_pair(p.mu, r.delta, p.R);
    const double gg = grid_gauge(fam.f, fam.g, coarse, levels, {o.threads});
    worst_gauge = std::max(worst_gauge, gg - r.delta);
    gauge_ok = gauge_ok && gg <= r.delta + kTau;
  }
  const double slope = table.slope.value_or(std::nan(""));
  std::vector<Property> props{
      {"extreme grid argmin within h of sqrt(2 delta/mu)", matches, "h = " + format_number(h)},
      {"dist <= 2 sqrt(delta/mu) + 2h on every row", below, std::to_string(table.rows.size()) + " rows"},
      {"grid gauge <= delta on every row (M = 1)", gauge_ok, "max excess " + format_number(worst_gauge)},
      {"log-log slope in [0.48, 0.52]", table.slope && slope >= 0.48 && slope <= 0.52, format_number(slope)},
  };
  std::ostringstream extra;
  extra << table.to_csv();
  return property_result("demo sharpness: mu = " + format_number(p.mu) + ", " + std::to_string(deltas.size()) +
                             " deltas",
                         props, extra.str(), o, table.to_csv());
}

}  // namespace

CommandResult cmd_gauge(const ProblemSpec& spec, const RunOptions& o) {
  require(spec.certificate || spec.pair, ErrorKind::Precondition,
          "gauge needs a certificate block or a pair (f, g) in the problem description");
  const double h = grid_step(spec, o);
  const double ht = level_step(spec, o);
  std::optional<ResolvedGauge> cert;
  if (spec.certificate) cert = resolve_gauge(spec, o);

  std::optional<double> oracle_gauge, oracle_sup;
  if (spec.pair) {
    const Func& f = spec.function(spec.pair->first);
    const Func& g = spec.function(spec.pair->second);
    const Grid grid(spec.dim, spec.cylinder.R, h);
    oracle_gauge = grid_gauge(f, g, grid, LevelGrid(spec.cylinder.M, ht), {o.threads});
    oracle_sup = grid_sup_abs_diff(f, g, grid, {o.threads});
  }
  std::optional<double> certified;
  std::optional<double> certified_sup;
  if (cert && cert->bound.certified) {
    certified = cert->bound.delta;
    if (cert->bound.provenance == Provenance::ValueBound || cert->bound.provenance == Provenance::Envelope)
      certified_sup = cert->bound.delta;
  }

  CommandResult r;
  r.csv = "quantity,certified,oracle\n";
  r.csv += "gauge," + cell(certified) + "," + cell(oracle_gauge) + "\n";
  r.csv += "sup_abs_diff," + cell(certified_sup) + "," + cell(oracle_sup) + "\n";

  std::ostringstream os;
  os << "problem " << spec.hash << ": n = " << spec.dim << ", R = " << format_number(spec.cylinder.R)
     << ", M = " << format_number(spec.cylinder.M) << ", h = " << format_number(h) << ", h_t = " << format_number(ht)
     << "\n";
  os << gauge_table({{"gauge G_{R,M}", certified, oracle_gauge}, {"sup |f - g|", certified_sup, oracle_sup}});
  if (cert) {
    os << "certificate: " << to_string(cert->bound.provenance) << ", "
       << (cert->bound.certified ? "certified" : "NOT certified") << ", delta = " << format_number(cert->bound.delta)
       << "\n  " << cert->bound.detail << "\n";
    for (const auto& b : cert->bracketing)
      os << "bracketing of '" << b.candidate << "': " << (b.passed() ? "passes" : "FAILS") << " on "
         << b.points_checked << " lattice points (" << b.violations.size() << " violations)\n";
    if (!cert->bracketing_ok()) r.status = kExitInconsistent;
  } else {
    os << "certificate: none\n";
  }
  os << kOracleNote << "\n";
  r.output = o.csv ? r.csv : os.str();
  return r;
}

CommandResult cmd_certify(const ProblemSpec& spec, const RunOptions& o) {
  require(spec.certificate.has_value(), ErrorKind::Precondition, "certify needs a certificate block");
  require(spec.growth.has_value(), ErrorKind::Precondition, "certify needs a growth block");
  require(spec.pair.has_value(), ErrorKind::Precondition, "certify needs a pair (f, g)");
  const double h = grid_step(spec, o);
  const double ht = level_step(spec, o);
  const Exec exec{o.threads};
  const Func& f = spec.function(spec.pair->first);
  const Func& g = spec.function(spec.pair->second);
  const GrowthCert& growth = *spec.growth;
  growth.validate(&f);

  const ResolvedGauge gauge = resolve_gauge(spec, o);
  const Grid grid(spec.dim, spec.cylinder.R, h);
  const double oracle_gauge = grid_gauge(f, g, grid, LevelGrid(spec.cylinder.M, ht), exec);
  const double oracle_sup = grid_sup_abs_diff(f, g, grid, exec);

  std::optional<Point> xstar;
  if (const auto* pts = std::get_if<std::vector<Point>>(&growth.argmin_set)) {
    for (const auto& p : *pts)
      if (in_ball(p.coords(), spec.cylinder.R)) {
        xstar = p;
        break;
      }
  } else {
    const auto& ball = std::get<BallSet>(growth.argmin_set);
    if (in_ball(ball.center.coords(), spec.cylinder.R)) xstar = ball.center;
  }
  require(xstar.has_value(), ErrorKind::Precondition, "no listed minimizer lies in B(0, R)");

  // farthest lattice minimizer of G from X*; ties broken by lattice order
  const GridArgmin am = grid_argmin(g, grid, exec);
  Point xtilde = am.points.front();
  double far = dist_to_set(xtilde, growth.argmin_set);
  for (const auto& p : am.points) {
    const double d = dist_to_set(p, growth.argmin_set);
    if (d > far) {
      far = d;
      xtilde = p;
    }
  }

  const DisplacementCert disp =
      displacement_bound(gauge.bound, growth, *xstar, xtilde, f, g, MinimizerSource::grid(h));
  const GrowthReport falsify = falsify_quadratic_growth(f, growth, spec.cylinder, spec.dim, h, exec);

  std::vector<std::string> failures = disp.failures;
  if (falsify.falsified())
    failures.push_back("quadratic growth falsified at " + std::to_string(falsify.violations.size()) + " lattice points");
  for (const auto& b : gauge.bracketing)
    if (!b.passed()) failures.push_back("certificate does not bracket '" + b.candidate + "' on the lattice");
  const bool valid = failures.empty();

  Json theorem = Json::array();
  const char* names[] = {"x*", "x~*"};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& w = disp.window_checks[i];
    const ValueGap gap = value_gap_from_gauge(gauge.bound, w);
    Json item{{"point", names[i]}, {"abs_diff", std::fabs(w.f_value - w.g_value)}};
    if (gap.valid()) {
      item["bound"] = *gap.bound;
      item["holds"] = std::fabs(w.f_value - w.g_value) <= *gap.bound + kTau;
    } else {
      item["bound"] = nullptr;
      item["invalid"] = gap.failure;
    }
    theorem.push_back(std::move(item));
  }
  Json chain = Json::array();
  for (const auto& c : disp.chain) chain.push_back(Json{{"inequality", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  Json windows = Json::array();
  for (const auto& w : disp.window_checks) windows.push_back(window_json(w));

  Json record;
  record["schema_version"] = kRecordSchemaVersion;
  record["problem_hash"] = "fnv1a64:" + spec.hash;
  record["generated_at"] = o.timestamp.value_or(now_utc());
  record["cylinder"] = Json{{"R", spec.cylinder.R}, {"M", spec.cylinder.M}};
  record["grid"] = Json{{"dimension", spec.dim}, {"step", h}, {"level_step", ht}};
  record["gauge"] = gauge_json(gauge.bound);
  record["oracle"] = Json{{"grid_gauge", oracle_gauge}, {"grid_sup_abs_diff", oracle_sup}, {"note", kOracleNote}};
  record["bracketing"] = bracketing_json(gauge.bracketing);
  record["growth"] = Json{{"mu", growth.mu},
                          {"radius", growth.radius},
                          {"argmin_set", argmin_json(growth.argmin_set)},
                          {"inf_value", growth.inf_value},
                          {"falsification", Json{{"points_checked", falsify.points_checked},
                                                 {"violations", falsify.violations.size()},
                                                 {"note", GrowthReport::kHeader}}}};
  record["minimizers"] = Json{{"xstar", point_json(*xstar)},
                              {"xtilde", point_json(xtilde)},
                              {"xtilde_source", "grid_argmin"},
                              {"tie_count", am.points.size()},
                              {"oracle_dist", disp.dist}};
  record["window_checks"] = windows;
  record["theorem_checks"] = theorem;
  record["chain"] = chain;
  record["displacement"] = Json{{"bound", disp.bound},
                                {"slack", disp.slack},
                                {"reported_bound", disp.reported_bound()},
                                {"slack_detail", disp.slack_detail}};
  record["valid"] = valid;
  record["failures"] = failures;

  CommandResult r;
  r.output = record.dump(2) + "\n";
  bool bracketing_ok = gauge.bracketing_ok();
  r.status = !bracketing_ok ? kExitInconsistent : (valid ? kExitOk : kExitPrecondition);
  return r;
}

CommandResult cmd_sweep(const ProblemSpec& spec, const std::optional<std::vector<double>>& deltas, const RunOptions& o) {
  double mu = 0.0, radius = spec.cylinder.R;
  std::vector<double> ds;
  if (spec.sweep) {
    mu = spec.sweep->mu;
    radius = spec.sweep->radius;
    ds = spec.sweep->deltas;
  } else if (spec.growth) {
    mu = spec.growth->mu;
  }
  if (deltas) ds = *deltas;
  require(mu > 0.0, ErrorKind::Precondition, "sweep needs mu from a sweep or growth block");
  if (ds.empty()) ds = default_deltas();
  const SweepTable table = sharpness_sweep(mu, ds, grid_step(spec, o), radius, {o.threads});
  CommandResult r;
  r.csv = table.to_csv();
  r.output = r.csv;
  return r;
}

CommandResult cmd_demo(const std::string& name, const DemoParams& params, const RunOptions& opts) {
  if (name == "strictness") return demo_strictness(params, opts);
  if (name == "impossibility") return demo_impossibility(params, opts);
  if (name == "sharpness") return demo_sharpness(params, opts);
  fail(ErrorKind::InvalidArgument, "unknown demo '" + name + "' (expected impossibility, sharpness, strictness)");
}

std::string strip_timestamp(const std::string& record) {
  std::istringstream in(record);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"generated_at\"") == std::string::npos) out += line + "\n";
  return out;
}

}  // namespace epigauge
