#pragma once

// Problem descriptions: a YAML document naming analytic function families,
// the cylinder, lattice steps and optional certificate / growth / sweep
// blocks. Unknown keys are errors; every error carries the source line.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epigauge/certificates.hpp"
#include "epigauge/epi_core.hpp"
#include "epigauge/stability.hpp"

namespace epigauge {

struct EnvelopeBlock {
  std::string lower;
  std::string upper;
  double region_radius;
  bool grid_exact;
};

struct LocalBlock {
  Point center;
  double radius;
  std::string lower;
  std::string upper;
};

struct CoverBlock {
  std::vector<LocalBlock> certs;
  bool grid_exact;
};

/// eta(x, t) = base + radial * ||x|| + level * |t|
struct ToleranceBlock {
  double base;
  double radial;
  double level;
  bool grid_exact;
};

struct ValueBoundBlock {
  double eps;
};

struct AssumedBlock {
  double delta;
  std::string reason;
};

using CertificateBlock = std::variant<EnvelopeBlock, CoverBlock, ToleranceBlock, ValueBoundBlock, AssumedBlock>;

struct SweepBlock {
  double mu;
  std::vector<double> deltas;
  double radius;
};

struct ProblemSpec {
  std::size_t dim = 1;
  Cylinder cylinder{1.0, 1.0};
  double domain_radius = 1.0;
  double grid_step = 1e-3;
  double level_step = 1e-2;
  std::map<std::string, Func> functions;
  std::optional<std::pair<std::string, std::string>> pair;  // (F, G)
  std::optional<CertificateBlock> certificate;
  std::optional<GrowthCert> growth;
  std::optional<SweepBlock> sweep;
  std::string hash;  // FNV-1a 64 of the source text

  const Func& function(const std::string& name) const;
};

ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace epigauge
