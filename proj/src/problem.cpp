#include "epigauge/problem.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "epigauge/families.hpp"

namespace epigauge {

namespace {

[[noreturn]] void parse_fail(const YAML::Node& node, const std::string& what) {
  const auto mark = node.Mark();
  if (mark.is_null()) fail(ErrorKind::Parse, what);
  fail(ErrorKind::Parse, "line " + std::to_string(mark.line + 1) + ": " + what);
}

// A mapping node whose keys are checked against the ones actually read.
class Block {
 public:
  Block(const YAML::Node& node, std::string where) : node_(node), where_(std::move(where)) {
    if (!node_.IsMap()) parse_fail(node_, where_ + " must be a mapping");
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node get(const std::string& key) {
    seen_.insert(key);
    YAML::Node n = node_[key];
    if (!n) parse_fail(node_, where_ + ": missing required key '" + key + "'");
    return n;
  }

  YAML::Node find(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  double number(const std::string& key) { return as_number(get(key), key); }
  double number(const std::string& key, double fallback) {
    YAML::Node n = find(key);
    return n ? as_number(n, key) : fallback;
  }

  std::string text(const std::string& key) {
    YAML::Node n = get(key);
    if (!n.IsScalar()) parse_fail(n, where_ + ": '" + key + "' must be a string");
    return n.Scalar();
  }

  bool flag(const std::string& key, bool fallback) {
    YAML::Node n = find(key);
    if (!n) return fallback;
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      parse_fail(n, where_ + ": '" + key + "' must be true or false");
    }
  }

  // Call after reading: any key not consumed is an error.
  void finish() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) parse_fail(kv.first, where_ + ": unknown key '" + key + "'");
    }
  }

  double as_number(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) parse_fail(n, where_ + ": '" + key + "' must be a number");
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      parse_fail(n, where_ + ": '" + key + "' must be a number");
    }
    if (!std::isfinite(v)) parse_fail(n, where_ + ": '" + key + "' must be finite");
    return v;
  }

  const YAML::Node& node() const { return node_; }
  const std::string& where() const { return where_; }

 private:
  YAML::Node node_;
  std::string where_;
  std::set<std::string> seen_;
};

std::vector<double> number_list(const YAML::Node& n, const std::string& what) {
  std::vector<double> out;
  auto one = [&](const YAML::Node& v) {
    try {
      double d = v.as<double>();
      if (!std::isfinite(d)) parse_fail(v, what + " entries must be finite");
      out.push_back(d);
    } catch (const YAML::Exception&) {
      parse_fail(v, what + " entries must be numbers");
    }
  };
  if (n.IsScalar()) {
    one(n);
  } else if (n.IsSequence()) {
    for (const auto& v : n) one(v);
  } else {
    parse_fail(n, what + " must be a number or a list of numbers");
  }
  return out;
}

Point point_of(const YAML::Node& n, std::size_t dim, const std::string& what) {
  auto c = number_list(n, what);
  if (c.size() != dim) parse_fail(n, what + " must have " + std::to_string(dim) + " coordinate(s)");
  return Point(std::move(c));
}

double positive(const YAML::Node& n, double v, const std::string& what) {
  if (!(v > 0.0)) parse_fail(n, what + " must be positive");
  return v;
}

class FunctionTable {
 public:
  FunctionTable(const YAML::Node& node, std::size_t dim, double default_radius)
      : dim_(dim), default_radius_(default_radius) {
    if (!node.IsMap()) parse_fail(node, "'functions' must be a mapping of name -> definition");
    for (const auto& kv : node) {
      const std::string name = kv.first.as<std::string>();
      order_.push_back(name);
      raw_.emplace(name, kv.second);
    }
  }

  std::map<std::string, Func> resolve_all() {
    for (const auto& name : order_) resolve(name, YAML::Node());
    return done_;
  }

 private:
  const Func& resolve(const std::string& name, const YAML::Node& ref) {
    if (auto it = done_.find(name); it != done_.end()) return it->second;
    auto raw = raw_.find(name);
    if (raw == raw_.end()) parse_fail(ref, "reference to undefined function '" + name + "'");
    if (!active_.insert(name).second) parse_fail(raw->second, "function '" + name + "' is defined in terms of itself");
    Func f = build(name, raw->second);
    active_.erase(name);
    return done_.emplace(name, std::move(f)).first->second;
  }

  Func build(const std::string& name, const YAML::Node& node) {
    Block b(node, "function '" + name + "'");
    const std::string family = b.text("family");
    const double radius = positive(node, b.number("domain_radius", default_radius_), "domain_radius");
    auto center = [&] {
      YAML::Node c = b.find("center");
      return c ? point_of(c, dim_, "center") : Point::origin(dim_);
    };
    auto inner = [&](const std::string& key) {
      YAML::Node ref = b.get(key);
      if (!ref.IsScalar()) parse_fail(ref, "'" + key + "' must name a function");
      return resolve(ref.Scalar(), ref);
    };

    std::optional<Func> out;
    try {
      if (family == "constant") {
        out = families::constant(b.number("value"), radius);
      } else if (family == "affine") {
        YAML::Node s = b.get("slope");
        auto slope = number_list(s, "slope");
        if (slope.size() != dim_) parse_fail(s, "slope must have " + std::to_string(dim_) + " entries");
        out = families::affine(std::move(slope), b.number("offset", 0.0), radius);
      } else if (family == "quadratic") {
        out = families::quadratic(b.number("scale"), center(), b.number("offset", 0.0), radius);
      } else if (family == "power") {
        const double exponent = positive(node, b.number("exponent"), "exponent");
        out = families::power(b.number("scale"), exponent, center(), b.number("offset", 0.0), radius);
      } else if (family == "bump") {
        const double rho = positive(node, b.number("rho"), "rho");
        out = families::bump(b.number("amplitude"), center(), rho, radius);
      } else if (family == "clamp_shift") {
        out = families::clamp_shift(inner("of"), b.number("delta"));
      } else if (family == "scale") {
        out = families::scale(inner("of"), b.number("factor"));
      } else if (family == "sum") {
        YAML::Node terms = b.get("terms");
        if (!terms.IsSequence() || terms.size() == 0) parse_fail(terms, "'terms' must be a nonempty list of names");
        std::vector<Func> fs;
        for (const auto& t : terms) {
          if (!t.IsScalar()) parse_fail(t, "'terms' entries must name functions");
          fs.push_back(resolve(t.Scalar(), t));
        }
        out = families::sum(std::move(fs));
      } else {
        parse_fail(node["family"], "unknown function family '" + family +
                                       "' (expected constant, affine, quadratic, power, bump, clamp_shift, scale, sum)");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      parse_fail(node, "function '" + name + "': " + e.what());
    }
    b.finish();
    return Func(name, out->domain_radius(), [impl = *out](std::span<const double> x) { return impl(x); });
  }

  std::size_t dim_;
  double default_radius_;
  std::vector<std::string> order_;
  std::map<std::string, YAML::Node> raw_;
  std::map<std::string, Func> done_;
  std::set<std::string> active_;
};

std::string function_ref(Block& b, const std::string& key, const std::map<std::string, Func>& fns) {
  YAML::Node n = b.get(key);
  if (!n.IsScalar()) parse_fail(n, b.where() + ": '" + key + "' must name a function");
  if (!fns.count(n.Scalar())) parse_fail(n, b.where() + ": '" + key + "' refers to undefined function '" + n.Scalar() + "'");
  return n.Scalar();
}

CertificateBlock parse_certificate(const YAML::Node& node, const ProblemSpec& spec) {
  Block b(node, "certificate");
  const std::string type = b.text("type");
  CertificateBlock out;
  if (type == "envelope") {
    EnvelopeBlock e;
    e.lower = function_ref(b, "lower", spec.functions);
    e.upper = function_ref(b, "upper", spec.functions);
    e.region_radius = positive(node, b.number("region_radius", spec.cylinder.R), "region_radius");
    e.grid_exact = b.flag("grid_exact", false);
    out = e;
  } else if (type == "cover") {
    CoverBlock c;
    c.grid_exact = b.flag("grid_exact", false);
    YAML::Node certs = b.get("certs");
    if (!certs.IsSequence() || certs.size() == 0) parse_fail(certs, "cover 'certs' must be a nonempty list");
    for (const auto& item : certs) {
      Block lb(item, "cover entry");
      LocalBlock l{point_of(lb.get("center"), spec.dim, "center"), 0.0, {}, {}};
      l.radius = positive(item, lb.number("radius"), "radius");
      l.lower = function_ref(lb, "lower", spec.functions);
      l.upper = function_ref(lb, "upper", spec.functions);
      lb.finish();
      c.certs.push_back(std::move(l));
    }
    out = c;
  } else if (type == "tolerance") {
    ToleranceBlock t{b.number("base"), b.number("radial", 0.0), b.number("level", 0.0), b.flag("grid_exact", false)};
    out = t;
  } else if (type == "value_bound") {
    const double eps = b.number("eps");
    if (eps < 0.0) parse_fail(node, "value_bound eps must be nonnegative");
    out = ValueBoundBlock{eps};
  } else if (type == "assumed") {
    const double delta = b.number("delta");
    if (delta < 0.0) parse_fail(node, "assumed delta must be nonnegative");
    out = AssumedBlock{delta, b.has("reason") ? b.text("reason") : std::string("no reason given")};
  } else {
    parse_fail(node["type"], "unknown certificate type '" + type +
                                 "' (expected envelope, cover, tolerance, value_bound, assumed)");
  }
  b.finish();
  return out;
}

GrowthCert parse_growth(const YAML::Node& node, const ProblemSpec& spec) {
  Block b(node, "growth");
  GrowthCert g{positive(node, b.number("mu"), "mu"), 0.0, std::vector<Point>{}, b.number("inf_value")};
  g.radius = positive(node, b.number("radius", spec.cylinder.R), "radius");
  Block a(b.get("argmin"), "growth.argmin");
  const int forms = a.has("points") + a.has("interval") + a.has("ball");
  if (forms != 1) parse_fail(a.node(), "growth.argmin needs exactly one of 'points', 'interval', 'ball'");
  if (a.has("points")) {
    YAML::Node pts = a.get("points");
    if (!pts.IsSequence() || pts.size() == 0) parse_fail(pts, "argmin points must be a nonempty list");
    std::vector<Point> list;
    for (const auto& p : pts) list.push_back(point_of(p, spec.dim, "argmin point"));
    g.argmin_set = std::move(list);
  } else if (a.has("interval")) {
    YAML::Node iv = a.get("interval");
    if (spec.dim != 1) parse_fail(iv, "argmin interval requires dimension 1");
    auto ab = number_list(iv, "interval");
    if (ab.size() != 2 || ab[0] > ab[1]) parse_fail(iv, "interval must be [a, b] with a <= b");
    g.argmin_set = interval_set(ab[0], ab[1]);
  } else {
    YAML::Node bn = a.get("ball");
    Block bb(bn, "growth.argmin.ball");
    BallSet ball{point_of(bb.get("center"), spec.dim, "ball center"), bb.number("radius")};
    if (ball.radius < 0.0) parse_fail(bn, "ball radius must be nonnegative");
    bb.finish();
    g.argmin_set = std::move(ball);
  }
  a.finish();
  b.finish();
  return g;
}

ProblemSpec parse_document(const YAML::Node& root) {
  Block top(root, "problem");
  ProblemSpec spec;
  {
    YAML::Node d = top.get("dimension");
    const double dim = top.as_number(d, "dimension");
    if (dim < 1 || dim != std::floor(dim) || dim > 16) parse_fail(d, "dimension must be an integer in [1, 16]");
    spec.dim = static_cast<std::size_t>(dim);
  }
  {
    YAML::Node c = top.get("cylinder");
    Block cb(c, "cylinder");
    const double R = positive(c, cb.number("R"), "cylinder R");
    const double M = positive(c, cb.number("M"), "cylinder M");
    cb.finish();
    spec.cylinder = Cylinder(R, M);
  }
  spec.domain_radius = positive(root, top.number("domain_radius", spec.cylinder.R), "domain_radius");
  if (YAML::Node g = top.find("grid")) {
    Block gb(g, "grid");
    spec.grid_step = positive(g, gb.number("step", spec.grid_step), "grid step");
    spec.level_step = positive(g, gb.number("level_step", spec.level_step), "grid level_step");
    gb.finish();
  }
  if (YAML::Node fns = top.find("functions")) spec.functions = FunctionTable(fns, spec.dim, spec.domain_radius).resolve_all();
  if (YAML::Node p = top.find("pair")) {
    Block pb(p, "pair");
    spec.pair = std::make_pair(function_ref(pb, "f", spec.functions), function_ref(pb, "g", spec.functions));
    pb.finish();
  }
  if (YAML::Node c = top.find("certificate")) spec.certificate = parse_certificate(c, spec);
  if (YAML::Node g = top.find("growth")) spec.growth = parse_growth(g, spec);
  if (YAML::Node s = top.find("sweep")) {
    Block sb(s, "sweep");
    SweepBlock sw{positive(s, sb.number("mu"), "sweep mu"), number_list(sb.get("deltas"), "sweep deltas"),
                  positive(s, sb.number("radius", spec.cylinder.R), "sweep radius")};
    sb.finish();
    spec.sweep = std::move(sw);
  }
  top.finish();
  return spec;
}

}  // namespace

const Func& ProblemSpec::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) fail(ErrorKind::Parse, "undefined function '" + name + "'");
  return it->second;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ProblemSpec parse_problem(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(ErrorKind::Parse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) fail(ErrorKind::Parse, "empty problem description");
  ProblemSpec spec;
  try {
    spec = parse_document(root);
  } catch (const YAML::Exception& e) {
    fail(ErrorKind::Parse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  spec.hash = fnv1a64_hex(text);
  return spec;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open problem description '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace epigauge
