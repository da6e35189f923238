#include "conebranch/spectral/profile.hpp"

#include <cmath>
#include <string>

#include "conebranch/error.hpp"

namespace conebranch::spectral {

using numerics::Jet;

namespace {

// exp(-k/(1-u^2)) underflows to exactly zero below 1 - u^2 = k / 745.
constexpr double kUnderflowExponent = 745.0;

}  // namespace

std::string_view to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::log_bump:
      return "log_bump";
    case ProfileFamily::bump:
      return "bump";
    case ProfileFamily::plateau:
      return "plateau";
  }
  return "unknown";
}

ProfileFamily parse_profile_family(std::string_view text) {
  if (text == "log_bump") return ProfileFamily::log_bump;
  if (text == "bump") return ProfileFamily::bump;
  if (text == "plateau") return ProfileFamily::plateau;
  throw InvalidArgument("unknown profile family '" + std::string(text) + "' (expected log_bump, bump or plateau)");
}

RadialProfile::RadialProfile(ProfileFamily family, double r_min, double r_max, double amplitude, double sharpness)
    : family_(family), r_min_(r_min), r_max_(r_max), amplitude_(amplitude), sharpness_(sharpness) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw InvalidArgument("RadialProfile: support must satisfy 0 < r_min < r_max < inf");
  }
  if (!std::isfinite(amplitude)) {
    throw InvalidArgument("RadialProfile: amplitude must be finite");
  }
  if (!(sharpness > 0.0) || !(sharpness < kUnderflowExponent)) {
    throw InvalidArgument("RadialProfile: sharpness must lie in (0, 745)");
  }
}

RadialProfile RadialProfile::dilated(double c) const {
  if (!(c > 0.0)) {
    throw InvalidArgument("RadialProfile::dilated: factor must be positive");
  }
  return {family_, c * r_min_, c * r_max_, amplitude_, sharpness_};
}

RadialProfile RadialProfile::scaled(double factor) const { return {family_, r_min_, r_max_, amplitude_ * factor, sharpness_}; }

double RadialProfile::value(double r) const {
  if (!(r > r_min_) || !(r < r_max_)) {
    return family_ == ProfileFamily::plateau && (r == r_min_ || r == r_max_) ? amplitude_ : 0.0;
  }
  if (family_ == ProfileFamily::plateau) {
    return amplitude_;
  }
  double u = 0.0;
  if (family_ == ProfileFamily::log_bump) {
    const double la = std::log(r_min_);
    const double lb = std::log(r_max_);
    u = (2.0 * std::log(r) - la - lb) / (lb - la);
  } else {
    u = (2.0 * r - r_min_ - r_max_) / (r_max_ - r_min_);
  }
  const double gap = 1.0 - u * u;
  if (gap * kUnderflowExponent <= sharpness_) {
    return 0.0;
  }
  return amplitude_ * std::exp(-sharpness_ / gap);
}

double RadialProfile::derivative(double r, int k) const {
  if (k < 0 || k > k_max()) {
    throw InsufficientSmoothness("RadialProfile: derivative order " + std::to_string(k) + " exceeds " +
                                 std::to_string(k_max()));
  }
  if (k == 0) {
    return value(r);
  }
  return compose(Jet::variable(k, r, 1.0)).derivative(k);
}

Jet RadialProfile::compose(const Jet& r) const {
  const int order = r.order();
  if (order > k_max()) {
    throw InsufficientSmoothness("RadialProfile: jet order " + std::to_string(order) + " exceeds " +
                                 std::to_string(k_max()));
  }
  const double r0 = r[0];
  if (!(r0 > r_min_) || !(r0 < r_max_)) {
    return Jet(order, family_ == ProfileFamily::plateau ? value(r0) : 0.0);
  }
  if (family_ == ProfileFamily::plateau) {
    return Jet(order, amplitude_);
  }
  Jet u;
  if (family_ == ProfileFamily::log_bump) {
    const double la = std::log(r_min_);
    const double lb = std::log(r_max_);
    u = (2.0 * log(r) + (-la - lb)) * (1.0 / (lb - la));
  } else {
    u = (2.0 * r + (-r_min_ - r_max_)) * (1.0 / (r_max_ - r_min_));
  }
  const Jet gap = 1.0 - u * u;
  if (gap[0] * kUnderflowExponent <= sharpness_) {
    return Jet(order, 0.0);
  }
  return exp(-sharpness_ * reciprocal(gap)) * amplitude_;
}

double RadialProfile::sup_norm() const {
  // Both bumps peak at u = 0 with value e^{-k}.
  return std::abs(amplitude_) * (family_ == ProfileFamily::plateau ? 1.0 : std::exp(-sharpness_));
}

TestFunction::TestFunction(RadialProfile profile, int n, Field field)
    : profile_(std::move(profile)), n_(n), field_(field) {
  if (n < 1) {
    throw InvalidArgument("TestFunction: n must be >= 1");
  }
  linear_ = Eigen::MatrixXd::Identity(real_dimension(), real_dimension());
  inner_ = profile_.r_min();
  outer_ = profile_.r_max();
}

TestFunction::TestFunction(RadialProfile profile, const group::GroupElement& g, group::UnitarityExponent exponent)
    : profile_(std::move(profile)), n_(g.n()), field_(g.field()), translate_(g) {
  const Eigen::MatrixXcd adj = g.adjoint();
  linear_ = field_ == Field::real ? Eigen::MatrixXd(adj.real()) : group::realify(adj);
  scale_ = group::sigma_scale(g, exponent).real();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(linear_);
  const auto& sv = svd.singularValues();
  inner_ = profile_.r_min() / sv(0);
  outer_ = profile_.r_max() / sv(sv.size() - 1);
}

std::pair<double, double> TestFunction::radial_window(std::span<const double> unit) const {
  if (radial()) {
    return {profile_.r_min(), profile_.r_max()};
  }
  const int d = real_dimension();
  double norm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += linear_(i, j) * unit[j];
    norm2 += acc * acc;
  }
  const double norm = std::sqrt(norm2);
  return {profile_.r_min() / norm, profile_.r_max() / norm};
}

double TestFunction::value(std::span<const double> x) const {
  const int d = real_dimension();
  double r2 = 0.0;
  if (radial()) {
    for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
  } else {
    for (int i = 0; i < d; ++i) {
      double acc = 0.0;
      for (int j = 0; j < d; ++j) acc += linear_(i, j) * x[j];
      r2 += acc * acc;
    }
  }
  return scale_ * profile_.value(std::sqrt(r2));
}

Jet TestFunction::directional_jet(std::span<const double> x, std::span<const double> w, int order) const {
  const int d = real_dimension();
  // |L(x + t w)|^2 = |Lx|^2 + 2 t <Lx, Lw> + t^2 |Lw|^2
  double xx = 0.0;
  double xw = 0.0;
  double ww = 0.0;
  for (int i = 0; i < d; ++i) {
    double lx = 0.0;
    double lw = 0.0;
    if (radial()) {
      lx = x[i];
      lw = w[i];
    } else {
      for (int j = 0; j < d; ++j) {
        lx += linear_(i, j) * x[j];
        lw += linear_(i, j) * w[j];
      }
    }
    xx += lx * lx;
    xw += lx * lw;
    ww += lw * lw;
  }
  if (xx == 0.0) {
    return Jet(order, 0.0);
  }
  Jet q(order, xx);
  if (order >= 1) q[1] = 2.0 * xw;
  if (order >= 2) q[2] = ww;
  return profile_.compose(sqrt(q)) * scale_;
}

Complex TestFunction::operator()(const Eigen::VectorXcd& v) const {
  const Eigen::VectorXd x = field_ == Field::real ? Eigen::VectorXd(v.real()) : group::realify(v);
  return value(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

}  // namespace conebranch::spectral
