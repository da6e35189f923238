#pragma once

#include <span>
#include <vector>

#include "conebranch/numerics/quadrature.hpp"

namespace conebranch::numerics {

/// Integration box (r, theta_1, ..., theta_{d-2}, phi) for a shell
/// r_lo <= |x| <= r_hi in R^d, d >= 2.
std::vector<Interval> hyperspherical_box(int d, double r_lo, double r_hi);

/// Writes the Cartesian point for coordinates (r, theta..., phi) into out
/// and returns the volume element r^{d-1} prod sin^{d-1-k}(theta_k).
double hyperspherical_point(std::span<const double> coords, std::span<double> out);

}  // namespace conebranch::numerics
