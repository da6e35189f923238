#include "conebranch/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "conebranch/error.hpp"

namespace conebranch::numerics {

void QuadratureConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) {
    throw InvalidArgument("QuadratureConfig: tolerances must be non-negative");
  }
  if (abs_tol == 0.0 && rel_tol == 0.0) {
    throw InvalidArgument("QuadratureConfig: abs_tol or rel_tol must be positive");
  }
  if (max_subdivisions < 1) {
    throw InvalidArgument("QuadratureConfig: max_subdivisions must be >= 1");
  }
  if (mc_samples < 1) {
    throw InvalidArgument("QuadratureConfig: mc_samples must be >= 1");
  }
}

namespace {

// Kronrod abscissae, symmetric about 0; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600225940291, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Sample {
  Complex value;
  double err = 0.0;
};

// A sub-range of the integration interval, optionally reparametrized over
// u in [0, 1] as t = anchor + span * u^power, or as
// t = anchor + span * exp(1 - 1/u) when exponential (singular at the anchor).
struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  bool graded = false;
  double anchor = 0.0;
  double span = 0.0;
  double power = 1.0;
  bool exponential = false;

  [[nodiscard]] double param_lo() const { return graded ? 0.0 : lo; }
  [[nodiscard]] double param_hi() const { return graded ? 1.0 : hi; }

  // Maps a parameter value to (t, dt/du).
  [[nodiscard]] std::pair<double, double> map(double u) const {
    if (!graded) {
      return {u, 1.0};
    }
    if (exponential) {
      if (u <= 0.0) {
        return {anchor, 0.0};
      }
      const double e = std::exp(1.0 - 1.0 / u);
      return {anchor + span * e, std::abs(span) * e / (u * u)};
    }
    const double up = std::pow(u, power - 1.0);
    return {anchor + span * up * u, std::abs(span) * power * up};
  }
};

struct Segment {
  int piece = 0;
  double a = 0.0;
  double b = 0.0;
  Complex value;
  double rule_err = 0.0;
  double inner_err = 0.0;
  double resabs = 0.0;
};

bool operator<(const Segment& x, const Segment& y) { return x.rule_err < y.rule_err; }

template <class F>
Segment gauss_kronrod_21(const F& f, const Piece& piece, int piece_index, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex kronrod = 0.0;
  Complex gauss = 0.0;
  double resabs = 0.0;
  double inner = 0.0;

  auto eval = [&](double u) -> Sample {
    const auto [t, jac] = piece.map(u);
    if (piece.graded && t == piece.anchor) {
      // Rounded onto the singular point; the graded integrand is bounded there.
      return {0.0, 0.0};
    }
    const Sample s = f(t);
    return {s.value * jac, s.err * jac};
  };

  {
    const Sample s = eval(centre);
    kronrod += kWgk[10] * s.value;
    resabs += kWgk[10] * std::abs(s.value);
    inner += kWgk[10] * s.err;
  }
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Sample lo = eval(centre - dx);
    const Sample hi = eval(centre + dx);
    const Complex sum = lo.value + hi.value;
    kronrod += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(lo.value) + std::abs(hi.value));
    inner += kWgk[j] * (lo.err + hi.err);
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * sum;
    }
  }
  Segment seg;
  seg.piece = piece_index;
  seg.a = a;
  seg.b = b;
  seg.value = kronrod * half;
  seg.rule_err = std::abs((kronrod - gauss) * half);
  seg.inner_err = inner * std::abs(half);
  seg.resabs = resabs * std::abs(half);
  return seg;
}

// t - t0 = u^p with p = 1 / (1 - alpha) turns |t - t0|^{-alpha} dt into a
// bounded integrand in u.
double grading_power(double alpha) { return 1.0 / (1.0 - alpha); }

std::vector<Piece> make_pieces(Interval interval, std::span<const EndpointSingularity> singularities) {
  struct Mark {
    double at;
    double alpha;
    bool oscillating = false;
  };
  std::vector<Mark> marks;
  for (const auto& s : singularities) {
    if (s.alpha >= 1.0) {
      std::ostringstream msg;
      msg << "quadrature: singular exponent alpha = " << s.alpha << " at t = " << s.location
          << " is not integrable";
      throw NonIntegrableSingularity(msg.str());
    }
    if (s.location >= interval.lo && s.location <= interval.hi) {
      marks.push_back({s.location, s.alpha, s.oscillation != 0.0});
    }
  }
  std::sort(marks.begin(), marks.end(), [](const Mark& x, const Mark& y) { return x.at < y.at; });

  // Merge coincident marks, keeping the strongest exponent, and make sure
  // both interval ends are present.
  std::vector<Mark> cuts;
  cuts.reserve(marks.size() + 2);
  cuts.push_back({interval.lo, 0.0, false});
  for (const auto& m : marks) {
    if (m.at == cuts.back().at) {
      cuts.back().alpha = std::max(cuts.back().alpha, m.alpha);
      cuts.back().oscillating = cuts.back().oscillating || m.oscillating;
    } else {
      cuts.push_back(m);
    }
  }
  if (cuts.back().at != interval.hi) {
    cuts.push_back({interval.hi, 0.0, false});
  }

  std::vector<Piece> pieces;
  // Oscillating marks are graded even when alpha <= 0.
  auto singular = [](const Mark& m) { return m.alpha > 0.0 || m.oscillating; };
  auto graded = [](double lo, double hi, const Mark& at) {
    return Piece{lo, hi, true, at.at, 0.0, grading_power(std::max(at.alpha, 0.0)), at.oscillating};
  };
  auto push = [&](const Mark& a, const Mark& b) {
    const bool sing_lo = singular(a);
    const bool sing_hi = singular(b);
    if (sing_lo && sing_hi) {
      const double mid = 0.5 * (a.at + b.at);
      Piece left = graded(a.at, mid, a);
      left.span = mid - a.at;
      Piece right = graded(mid, b.at, b);
      right.span = mid - b.at;
      pieces.push_back(left);
      pieces.push_back(right);
    } else if (sing_lo) {
      Piece p = graded(a.at, b.at, a);
      p.span = b.at - a.at;
      pieces.push_back(p);
    } else if (sing_hi) {
      Piece p = graded(a.at, b.at, b);
      p.span = a.at - b.at;
      pieces.push_back(p);
    } else {
      pieces.push_back({a.at, b.at, false});
    }
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    push(cuts[i], cuts[i + 1]);
  }
  return pieces;
}

struct AdaptiveTarget {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  int max_subdivisions = 2000;
};

template <class F>
Sample adaptive_integrate(const F& f, Interval interval, std::span<const EndpointSingularity> singularities,
                          const AdaptiveTarget& target) {
  if (interval.hi == interval.lo) {
    return {0.0, 0.0};
  }
  double sign = 1.0;
  if (interval.hi < interval.lo) {
    std::swap(interval.lo, interval.hi);
    sign = -1.0;
  }
  const std::vector<Piece> pieces = make_pieces(interval, singularities);

  std::vector<Segment> heap;
  heap.reserve(pieces.size() + 2 * static_cast<std::size_t>(std::min(target.max_subdivisions, 4096)));
  Complex total = 0.0;
  double rule_err = 0.0;
  double inner_err = 0.0;
  double resabs = 0.0;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    Segment seg = gauss_kronrod_21(f, pieces[p], static_cast<int>(p), pieces[p].param_lo(), pieces[p].param_hi());
    total += seg.value;
    rule_err += seg.rule_err;
    inner_err += seg.inner_err;
    resabs += seg.resabs;
    heap.push_back(seg);
  }
  std::make_heap(heap.begin(), heap.end());

  auto tolerance = [&] {
    return std::max({target.abs_tol, target.rel_tol * std::abs(total), 50.0 * kEps * resabs});
  };

  int subdivisions = 0;
  while (rule_err > tolerance()) {
    if (subdivisions >= target.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature: " << subdivisions << " subdivisions on [" << interval.lo << ", " << interval.hi
          << "] leave error " << rule_err << " above tolerance " << tolerance() << " (value " << total << ")";
      throw MaxSubdivisionsExceeded(msg.str());
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece& piece = pieces[static_cast<std::size_t>(worst.piece)];
    Segment left = gauss_kronrod_21(f, piece, worst.piece, worst.a, mid);
    Segment right = gauss_kronrod_21(f, piece, worst.piece, mid, worst.b);

    total += left.value + right.value - worst.value;
    rule_err += left.rule_err + right.rule_err - worst.rule_err;
    inner_err += left.inner_err + right.inner_err - worst.inner_err;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    ++subdivisions;

    // Incremental updates drift; resum now and then.
    if (subdivisions % 64 == 0) {
      total = 0.0;
      rule_err = inner_err = resabs = 0.0;
      for (const auto& s : heap) {
        total += s.value;
        rule_err += s.rule_err;
        inner_err += s.inner_err;
        resabs += s.resabs;
      }
    }
  }
  total = 0.0;
  rule_err = inner_err = 0.0;
  for (const auto& s : heap) {
    total += s.value;
    rule_err += s.rule_err;
    inner_err += s.inner_err;
  }
  return {sign * total, rule_err + inner_err};
}

class NestedIntegrator {
 public:
  NestedIntegrator(const IntegrandND& f, std::span<const Interval> box,
                   const std::optional<SingularHyperplane>& singular, const QuadratureConfig& cfg)
      : f_(f), box_(box.begin(), box.end()), singular_(singular), cfg_(cfg), dim_(static_cast<int>(box.size())) {
    for (int i = 0; i < dim_; ++i) {
      order_.push_back(i);
    }
    if (singular_) {
      int best = 0;
      for (int i = 1; i < dim_; ++i) {
        if (std::abs(singular_->normal[i]) > std::abs(singular_->normal[best])) {
          best = i;
        }
      }
      singular_var_ = best;
      order_.erase(std::find(order_.begin(), order_.end(), best));
      // A coordinate plane sits at a fixed position, so its variable goes
      // outermost and the singularity is resolved once; otherwise its
      // location depends on the other variables and it goes innermost.
      axis_aligned_ = std::count(singular_->normal.begin(), singular_->normal.end(), 0.0) == dim_ - 1;
      if (axis_aligned_) {
        order_.insert(order_.begin(), best);
      } else {
        order_.push_back(best);
      }
    }
  }

  // Tensor Kronrod estimate of the L1 mass, used to turn rel_tol into an
  // absolute target for the nested levels.
  double l1_mass() {
    double total = 0.0;
    coarse(0, 1.0, total);
    return total;
  }

  Sample integrate(double abs_target) { return level(0, abs_target); }

 private:
  void coarse(int depth, double weight, double& total) {
    if (depth == dim_) {
      const double v = std::abs(f_(std::span<const double>(x_.data(), static_cast<std::size_t>(dim_))));
      if (std::isfinite(v)) {
        total += weight * v;
      }
      return;
    }
    const Interval side = box_[static_cast<std::size_t>(depth)];
    const double centre = 0.5 * (side.lo + side.hi);
    const double half = 0.5 * std::abs(side.hi - side.lo);
    for (int j = 0; j < 21; ++j) {
      const double node = j < 10 ? -kXgk[j] : (j == 10 ? 0.0 : kXgk[20 - j]);
      const double w = j < 10 ? kWgk[j] : (j == 10 ? kWgk[10] : kWgk[20 - j]);
      x_[depth] = centre + half * node;
      coarse(depth + 1, weight * w * half, total);
    }
  }

  Sample level(int depth, double tol) {
    const int var = order_[static_cast<std::size_t>(depth)];
    const Interval side = box_[static_cast<std::size_t>(var)];
    AdaptiveTarget target{0.0, 0.0, cfg_.max_subdivisions};

    std::vector<EndpointSingularity> sing;
    if (singular_ && var == singular_var_) {
      double rest = singular_->offset;
      for (int i = 0; i < dim_; ++i) {
        if (i != var && singular_->normal[i] != 0.0) {
          rest += singular_->normal[i] * x_[i];
        }
      }
      sing.push_back({-rest / singular_->normal[var], singular_->alpha, singular_->oscillation});
    }

    if (depth == dim_ - 1) {
      target.abs_tol = tol;
      auto inner = [&](double t) -> Sample {
        x_[var] = t;
        return {f_(std::span<const double>(x_.data(), static_cast<std::size_t>(dim_))), 0.0};
      };
      return adaptive_integrate(inner, side, sing, target);
    }

    target.abs_tol = 0.5 * tol;
    const double inner_tol = 0.5 * tol / std::max(std::abs(side.width()), 1e-300);
    auto outer = [&](double t) -> Sample {
      x_[var] = t;
      return level(depth + 1, inner_tol);
    };
    return adaptive_integrate(outer, side, sing, target);
  }

  const IntegrandND& f_;
  std::vector<Interval> box_;
  const std::optional<SingularHyperplane>& singular_;
  const QuadratureConfig& cfg_;
  int dim_;
  int singular_var_ = -1;
  bool axis_aligned_ = false;
  std::vector<int> order_;
  std::array<double, kMaxQuadDimension> x_{};
};

}  // namespace

QuadResult quad_1d(const Integrand1D& f, Interval interval, const QuadratureConfig& cfg,
                   std::span<const EndpointSingularity> singularities) {
  cfg.validate();
  auto sample = [&](double t) -> Sample { return {f(t), 0.0}; };
  const Sample s = adaptive_integrate(sample, interval, singularities,
                                      AdaptiveTarget{cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions});
  return {s.value, s.err};
}

QuadResult quad_nd(const IntegrandND& f, std::span<const Interval> box,
                   const std::optional<SingularHyperplane>& singular, const QuadratureConfig& cfg) {
  cfg.validate();
  if (box.empty()) {
    throw InvalidArgument("quad_nd: empty box");
  }
  if (box.size() > static_cast<std::size_t>(kMaxQuadDimension)) {
    throw DimensionTooLarge("quad_nd: dimension " + std::to_string(box.size()) + " exceeds " +
                            std::to_string(kMaxQuadDimension));
  }
  if (singular) {
    if (singular->normal.size() != box.size()) {
      throw InvalidArgument("quad_nd: hyperplane normal has the wrong dimension");
    }
    if (singular->alpha >= 1.0) {
      throw NonIntegrableSingularity("quad_nd: hyperplane exponent alpha >= 1 is not integrable");
    }
    if (std::all_of(singular->normal.begin(), singular->normal.end(), [](double v) { return v == 0.0; })) {
      throw InvalidArgument("quad_nd: hyperplane normal is zero");
    }
  }
  NestedIntegrator integrator(f, box, singular, cfg);
  const double mass = integrator.l1_mass();
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * mass);
  if (target == 0.0) {
    return {0.0, 0.0};
  }
  const Sample s = integrator.integrate(target);
  return {s.value, s.err};
}

}  // namespace conebranch::numerics
