#pragma once

// Named analytic function families. Everything the problem-description
// loader can build goes through here.

#include <vector>

#include "epigauge/epi_core.hpp"

namespace epigauge::families {

Func constant(double value, double domain_radius);

/// <slope, x> + offset
Func affine(std::vector<double> slope, double offset, double domain_radius);

/// scale * ||x - center||^2 + offset
Func quadratic(double scale, Point center, double offset, double domain_radius);

/// scale * ||x - center||^exponent + offset, exponent > 0
Func power(double scale, double exponent, Point center, double offset, double domain_radius);

/// amplitude * max(0, 1 - ||x - center|| / rho)
Func bump(double amplitude, Point center, double rho, double domain_radius);

/// (inner(x) - shift)_+
Func clamp_shift(Func inner, double shift);

/// Pointwise sum; the domain is the smallest of the terms' domains.
Func sum(std::vector<Func> terms);

Func scale(Func inner, double factor);

}  // namespace epigauge::families
