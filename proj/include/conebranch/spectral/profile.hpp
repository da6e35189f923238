#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "conebranch/field.hpp"
#include "conebranch/group/group.hpp"
#include "conebranch/numerics/jet.hpp"

namespace conebranch::spectral {

enum class ProfileFamily {
  /// exp(-k/(1-u^2)) with u affine in log r; the default.
  log_bump,
  /// exp(-k/(1-u^2)) with u affine in r.
  bump,
  /// Indicator of [r_min, r_max]; not smooth, for Mellin checks only.
  plateau,
};

std::string_view to_string(ProfileFamily family);
ProfileFamily parse_profile_family(std::string_view text);

/// Compactly supported radial profile on (0, inf) with exact derivatives up
/// to order k_max() (jets).
class RadialProfile {
 public:
  static constexpr int kDefaultMaxOrder = 8;

  /// `sharpness` is the constant k of the bump families; larger k gives a
  /// narrower bump whose Mellin transform decays faster.
  RadialProfile(ProfileFamily family, double r_min, double r_max, double amplitude = 1.0, double sharpness = 1.0);

  static RadialProfile log_bump(double r_min, double r_max, double amplitude = 1.0, double sharpness = 1.0) {
    return {ProfileFamily::log_bump, r_min, r_max, amplitude, sharpness};
  }
  static RadialProfile bump(double r_min, double r_max, double amplitude = 1.0, double sharpness = 1.0) {
    return {ProfileFamily::bump, r_min, r_max, amplitude, sharpness};
  }
  static RadialProfile plateau(double r_min, double r_max, double amplitude = 1.0) {
    return {ProfileFamily::plateau, r_min, r_max, amplitude};
  }

  [[nodiscard]] ProfileFamily family() const { return family_; }
  [[nodiscard]] double r_min() const { return r_min_; }
  [[nodiscard]] double r_max() const { return r_max_; }
  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] double sharpness() const { return sharpness_; }
  [[nodiscard]] int k_max() const { return family_ == ProfileFamily::plateau ? 0 : kDefaultMaxOrder; }

  /// The profile r -> p(r / c), supported on [c r_min, c r_max].
  [[nodiscard]] RadialProfile dilated(double c) const;
  [[nodiscard]] RadialProfile scaled(double factor) const;

  [[nodiscard]] double value(double r) const;

  /// d^k p / dr^k at r; InsufficientSmoothness for k > k_max().
  [[nodiscard]] double derivative(double r, int k) const;

  /// Taylor coefficients of p(r(t)) for a radius jet r(t) with r(0) > 0.
  [[nodiscard]] numerics::Jet compose(const numerics::Jet& r) const;

  /// sup |p|.
  [[nodiscard]] double sup_norm() const;

 private:
  ProfileFamily family_;
  double r_min_;
  double r_max_;
  double amplitude_;
  double sharpness_;
};

/// f(x) = scale * p(|L x|) on R^d (d = n real, 2n complex), where L is the
/// identity, g^t (real) or the realified g^* (complex) and scale follows the
/// sigma action for the chosen unitarity exponent.
class TestFunction {
 public:
  /// Radial function p(|x|) on R^n / C^n.
  TestFunction(RadialProfile profile, int n, Field field);

  /// sigma(g) applied to the radial function.
  TestFunction(RadialProfile profile, const group::GroupElement& g,
               group::UnitarityExponent exponent = group::UnitarityExponent::one);

  [[nodiscard]] const RadialProfile& profile() const { return profile_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] bool radial() const { return !translate_.has_value(); }
  [[nodiscard]] const std::optional<group::GroupElement>& translate() const { return translate_; }
  [[nodiscard]] int real_dimension() const { return n_ * real_dim(field_); }
  [[nodiscard]] double scale() const { return scale_; }

  /// f vanishes unless inner_radius() <= |x| <= outer_radius().
  [[nodiscard]] double inner_radius() const { return inner_; }
  [[nodiscard]] double outer_radius() const { return outer_; }

  /// Radii between which f(rho u) can be non-zero, for a unit vector u of R^d.
  [[nodiscard]] std::pair<double, double> radial_window(std::span<const double> unit) const;

  /// Value at a point of R^d (complex coordinates interleaved).
  [[nodiscard]] double value(std::span<const double> x) const;

  /// Taylor coefficients in t of f(x + t w) up to the given order.
  [[nodiscard]] numerics::Jet directional_jet(std::span<const double> x, std::span<const double> w,
                                              int order) const;

  /// Value at a vector of R^n / C^n.
  [[nodiscard]] Complex operator()(const Eigen::VectorXcd& v) const;

 private:
  RadialProfile profile_;
  int n_;
  Field field_;
  std::optional<group::GroupElement> translate_;
  Eigen::MatrixXd linear_;
  double scale_ = 1.0;
  double inner_ = 0.0;
  double outer_ = 0.0;
};

}  // namespace conebranch::spectral
