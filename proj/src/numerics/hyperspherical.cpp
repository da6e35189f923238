#include "conebranch/numerics/hyperspherical.hpp"

#include <cmath>
#include <numbers>

#include "conebranch/error.hpp"

namespace conebranch::numerics {

std::vector<Interval> hyperspherical_box(int d, double r_lo, double r_hi) {
  if (d < 2) {
    throw InvalidArgument("hyperspherical_box: dimension must be >= 2");
  }
  std::vector<Interval> box = {{r_lo, r_hi}};
  for (int k = 0; k < d - 2; ++k) {
    box.push_back({0.0, std::numbers::pi});
  }
  box.push_back({0.0, 2.0 * std::numbers::pi});
  return box;
}

double hyperspherical_point(std::span<const double> coords, std::span<double> out) {
  const std::size_t d = coords.size();
  const double r = coords[0];
  double radius = r;
  double jac = std::pow(r, static_cast<double>(d - 1));
  for (std::size_t k = 1; k + 1 < d; ++k) {
    const double th = coords[k];
    out[k - 1] = radius * std::cos(th);
    const double sn = std::sin(th);
    radius *= sn;
    jac *= std::pow(sn, static_cast<double>(d - 1 - k));
  }
  const double phi = coords[d - 1];
  out[d - 2] = radius * std::cos(phi);
  out[d - 1] = radius * std::sin(phi);
  return jac;
}

}  // namespace conebranch::numerics
