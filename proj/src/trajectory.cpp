#include "ratlink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

namespace ratlink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Period of the chart coordinate ψ: [0, 2] is t ∈ [−1, 1], [2, 4] is u = 3 − ψ.
constexpr double kPsiPeriod = 4.0;
constexpr int kPoleScanSamples = 256;

/// Speed |dx̄/du| of a chart path with cached derivative polynomials.
class ChartSpeed {
 public:
  explicit ChartSpeed(const RationalPointPath& path)
      : path_(path),
        d0_(path.x0.derivative()),
        d1_(path.x1.derivative()),
        d2_(path.x2.derivative()),
        d3_(path.x3.derivative()),
        scale_(path.x0.max_abs_coeff()) {}

  double operator()(double u) const {
    const double w = path_.x0(u);
    if (!(std::abs(w) > 1e-14 * scale_)) pole(u);
    const double dw = d0_(u);
    const double v1 = (d1_(u) * w - path_.x1(u) * dw) / (w * w);
    const double v2 = (d2_(u) * w - path_.x2(u) * dw) / (w * w);
    const double v3 = (d3_(u) * w - path_.x3(u) * dw) / (w * w);
    return std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
  }

  /// Throws PoleOnPath if x0 changes sign or vanishes on [a, b].
  void check_interval(double a, double b) const {
    if (a > b) std::swap(a, b);
    const double first = path_.x0(a);
    for (int i = 0; i <= kPoleScanSamples; ++i) {
      const double u = a + (b - a) * i / kPoleScanSamples;
      const double w = path_.x0(u);
      if (!(std::abs(w) > 1e-14 * scale_) || (w > 0) != (first > 0)) pole(u);
    }
  }

 private:
  [[noreturn]] static void pole(double u) {
    std::ostringstream msg;
    msg << "homogeneous coordinate x0 vanishes near chart parameter " << u;
    throw Error(ErrorKind::PoleOnPath, msg.str());
  }

  const RationalPointPath& path_;
  RealPolynomial d0_, d1_, d2_, d3_;
  double scale_;
};

double psi_of(MotionParam t) {
  if (t.is_infinite()) return 3.0;
  const double x = t.value();
  if (std::abs(x) <= 1.0) return x + 1.0;
  return 3.0 - 1.0 / x;
}

double wrap_psi(double psi) {
  double v = std::fmod(psi, kPsiPeriod);
  if (v < 0) v += kPsiPeriod;
  return v;
}

double wrap_angle(double a) {
  double v = std::fmod(a, kTwoPi);
  if (v < 0) v += kTwoPi;
  if (v >= kTwoPi) v = 0.0;
  return v;
}

}  // namespace

double arc_length(const RationalPointPath& path, double t0, double t1, const SimpsonOptions& opts) {
  if (t0 == t1) return 0.0;
  const ChartSpeed speed(path);
  speed.check_interval(t0, t1);
  return std::abs(adaptive_simpson(speed, std::min(t0, t1), std::max(t0, t1), opts));
}

PathTraversal::PathTraversal(const MotionPolynomial& motion, const Vec3& tool, MotionParam start,
                             MotionParam end, TravelDirection direction,
                             const SimpsonOptions& opts)
    : direct_(motion.point_path(tool)),
      reciprocal_(motion.reparameterize_reciprocal().point_path(tool)),
      opts_(opts),
      direction_(direction),
      start_(start),
      end_(end) {
  if (direction != TravelDirection::IncreasingT && direction != TravelDirection::DecreasingT) {
    throw Error(ErrorKind::InvalidArgument, "traversal direction must be resolved to +t or -t");
  }
  const bool up = direction == TravelDirection::IncreasingT;
  const double psi_a = psi_of(start);
  const double psi_b = psi_of(end);
  double remaining = up ? wrap_psi(psi_b - psi_a) : wrap_psi(psi_a - psi_b);
  // t = −1 sits at both ends of the ψ period.
  if (start == end) remaining = 0.0;
  span_ = remaining;

  double cur = psi_a;
  double sigma = 0.0;
  while (remaining > 0.0) {
    Piece p{};
    double next;
    if (up) {
      if (cur >= kPsiPeriod) cur -= kPsiPeriod;
      const double boundary = cur < 2.0 ? 2.0 : kPsiPeriod;
      const double len = std::min(boundary - cur, remaining);
      next = cur + len;
      p.reciprocal = cur >= 2.0;
      p.sigma_to = sigma + len;
      remaining -= len;
    } else {
      if (cur <= 0.0) cur += kPsiPeriod;
      const double boundary = cur > 2.0 ? 2.0 : 0.0;
      const double len = std::min(cur - boundary, remaining);
      next = cur - len;
      p.reciprocal = cur > 2.0;
      p.sigma_to = sigma + len;
      remaining -= len;
    }
    p.sigma_from = sigma;
    p.u_from = p.reciprocal ? 3.0 - cur : cur - 1.0;
    p.u_to = p.reciprocal ? 3.0 - next : next - 1.0;
    if (p.sigma_to > p.sigma_from) pieces_.push_back(p);
    sigma = p.sigma_to;
    cur = next;
  }
  finalize_pieces();
}

PathTraversal PathTraversal::finite(const RationalPointPath& path, double t0, double t1,
                                    const SimpsonOptions& opts) {
  PathTraversal tr;
  tr.direct_ = path;
  tr.opts_ = opts;
  tr.direction_ = t1 >= t0 ? TravelDirection::IncreasingT : TravelDirection::DecreasingT;
  tr.start_ = MotionParam{t0};
  tr.end_ = MotionParam{t1};
  tr.span_ = std::abs(t1 - t0);
  if (tr.span_ > 0.0) tr.pieces_.push_back(Piece{false, t0, t1, 0.0, tr.span_, 0.0, 0.0});
  tr.finalize_pieces();
  return tr;
}

void PathTraversal::finalize_pieces() {
  double total = 0.0;
  for (auto& p : pieces_) {
    ChartSpeed(chart(p)).check_interval(p.u_from, p.u_to);
    p.length_before = total;
    p.length = piece_length(p, p.u_from, p.u_to);
    total += p.length;
  }
  total_length_ = total;
}

double PathTraversal::piece_length(const Piece& p, double u_a, double u_b) const {
  if (u_a == u_b) return 0.0;
  const ChartSpeed speed(chart(p));
  return std::abs(adaptive_simpson(speed, std::min(u_a, u_b), std::max(u_a, u_b), opts_));
}

std::size_t PathTraversal::piece_index(double sigma) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (sigma <= pieces_[i].sigma_to) return i;
  return pieces_.size() - 1;
}

double PathTraversal::chart_coord(const Piece& p, double sigma) const {
  const double frac = (sigma - p.sigma_from) / (p.sigma_to - p.sigma_from);
  if (frac <= 0.0) return p.u_from;
  if (frac >= 1.0) return p.u_to;
  return p.u_from + (p.u_to - p.u_from) * frac;
}

double PathTraversal::length_to(double sigma) const {
  if (pieces_.empty() || sigma <= 0.0) return 0.0;
  if (sigma >= span_) return total_length_;
  const Piece& p = pieces_[piece_index(sigma)];
  return p.length_before + piece_length(p, p.u_from, chart_coord(p, sigma));
}

double PathTraversal::length_between(double sigma_a, double sigma_b) const {
  if (sigma_b <= sigma_a) return 0.0;
  sigma_a = std::max(sigma_a, 0.0);
  sigma_b = std::min(sigma_b, span_);
  const std::size_t ia = piece_index(sigma_a);
  const std::size_t ib = piece_index(sigma_b);
  const Piece& pa = pieces_[ia];
  const Piece& pb = pieces_[ib];
  if (ia == ib) return piece_length(pa, chart_coord(pa, sigma_a), chart_coord(pa, sigma_b));
  double s = piece_length(pa, chart_coord(pa, sigma_a), pa.u_to);
  for (std::size_t i = ia + 1; i < ib; ++i) s += pieces_[i].length;
  return s + piece_length(pb, pb.u_from, chart_coord(pb, sigma_b));
}

MotionParam PathTraversal::param_at(double sigma) const {
  if (pieces_.empty() || sigma <= 0.0) return start_;
  if (sigma >= span_) return end_;
  const Piece& p = pieces_[piece_index(sigma)];
  const double u = chart_coord(p, sigma);
  if (!p.reciprocal) return MotionParam{u};
  return u == 0.0 ? MotionParam::infinity() : MotionParam{1.0 / u};
}

Vec3 PathTraversal::point_at(double sigma) const {
  if (pieces_.empty()) {
    const MotionParam t = start_;
    return t.is_infinite() ? reciprocal_.point(0.0) : direct_.point(t.value());
  }
  const Piece& p = pieces_[piece_index(std::clamp(sigma, 0.0, span_))];
  return chart(p).point(chart_coord(p, std::clamp(sigma, 0.0, span_)));
}

namespace {

/// σ with |s(σ) − target| ≤ tol, bisecting on [lo, hi]; `length` gives s(σ).
template <class LengthFn>
double bisect_knot(const LengthFn& length, double lo, double hi, double target, double tol,
                   int max_iters, int knot) {
  for (int it = 0; it < max_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double diff = length(mid) - target;
    if (std::abs(diff) <= tol) return mid;
    if (diff < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (!(hi > lo)) break;
  }
  std::ostringstream msg;
  msg << "bisection for knot " << knot << " did not reach tolerance " << tol;
  throw Error(ErrorKind::BisectionFailure, msg.str());
}

}  // namespace

PathSegmentation equidistant_segmentation(const PathTraversal& traversal, int n,
                                          const DrivingAxis& axis, const BisectionOptions& opts) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "number of segments must be at least 1");
  PathSegmentation out;
  out.total_length = traversal.total_length();
  out.segment_length = out.total_length / n;
  std::vector<double> sigma(static_cast<std::size_t>(n) + 1, 0.0);
  sigma.back() = traversal.span();

  const double s = out.total_length;
  if (s <= 0.0) {
    // Stationary tool point: fall back to uniform chart spacing.
    for (int i = 1; i < n; ++i) sigma[i] = traversal.span() * i / n;
  } else {
    // Each knot sits within tol/2 of i·s/n, so every segment is within tol of s/n.
    const double tol = 0.5 * s * opts.relative_tol;
    if (opts.exec == Execution::Parallel) {
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
      for (int i = 1; i < n; ++i) {
        try {
          sigma[i] = bisect_knot([&](double x) { return traversal.length_to(x); }, 0.0,
                                 traversal.span(), s * i / n, tol, opts.max_iters, i);
        } catch (...) {
#pragma omp critical(ratlink_knot_failure)
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      double prev_sigma = 0.0;
      double prev_length = 0.0;
      for (int i = 1; i < n; ++i) {
        const double base_sigma = prev_sigma;
        const double base_length = prev_length;
        auto length = [&](double x) {
          return base_length + traversal.length_between(base_sigma, x);
        };
        sigma[i] = bisect_knot(length, base_sigma, traversal.span(), s * i / n, tol,
                               opts.max_iters, i);
        prev_sigma = sigma[i];
        prev_length = length(sigma[i]);
      }
    }
  }

  out.params.reserve(sigma.size());
  out.angles.reserve(sigma.size());
  for (double x : sigma) {
    out.params.push_back(traversal.param_at(x));
    out.angles.push_back(param_to_angle(out.params.back(), axis));
  }
  return out;
}

PathSegmentation equidistant_params(const RationalPointPath& path, double t0, double t1, int n,
                                    const DrivingAxis& axis, const BisectionOptions& opts) {
  return equidistant_segmentation(PathTraversal::finite(path, t0, t1), n, axis, opts);
}

QuinticScaling::QuinticScaling(double theta_start, double theta_end, double duration)
    : start_(theta_start), delta_(theta_end - theta_start), duration_(duration) {
  if (!(duration > 0.0)) throw Error(ErrorKind::InvalidArgument, "duration must be positive");
}

QuinticScaling::State QuinticScaling::operator()(double time) const {
  const double tau = std::clamp(time / duration_, 0.0, 1.0);
  const double tau2 = tau * tau;
  const double s = tau2 * tau * (10.0 - 15.0 * tau + 6.0 * tau2);
  const double ds = 30.0 * tau2 * (1.0 - 2.0 * tau + tau2);
  return {start_ + s * delta_, ds * delta_ / duration_};
}

double QuinticScaling::peak_velocity() const { return 15.0 * delta_ / (8.0 * duration_); }

QuinticScaling quintic_time_scaling(JointAngle start, JointAngle end, double duration) {
  return QuinticScaling{start.radians(), end.radians(), duration};
}

double joint_travel(JointAngle theta0, JointAngle theta1, TravelDirection direction) {
  const double up = wrap_angle(theta1.radians() - theta0.radians());
  const double down = up == 0.0 ? 0.0 : up - kTwoPi;
  switch (direction) {
    case TravelDirection::DecreasingT: return up;
    case TravelDirection::IncreasingT: return down;
    case TravelDirection::ShortArc: return up <= -down ? up : down;
    case TravelDirection::LongArc: return up > -down ? up : down;
  }
  return up;
}

namespace {

int step_count(double duration, double frequency) {
  if (!(duration > 0.0) || !(frequency > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "duration and frequency must be positive");
  }
  const long n = std::lround(duration * frequency);
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "duration * frequency must round to >= 1");
  return static_cast<int>(n);
}

}  // namespace

TrajectoryProfile linear_profile(JointAngle theta0, JointAngle theta1, double duration,
                                 double frequency, TravelDirection direction) {
  const int n = step_count(duration, frequency);
  const double travel = joint_travel(theta0, theta1, direction);
  TrajectoryProfile out{{}, duration, frequency};
  out.samples.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double theta = i == n ? theta1.radians() : theta0.radians() + travel * i / n;
    out.samples.push_back({i / frequency, wrap_angle(theta), travel / duration});
  }
  return out;
}

TrajectoryProfile quintic_profile(JointAngle theta0, JointAngle theta1, double duration,
                                  double frequency, TravelDirection direction) {
  const int n = step_count(duration, frequency);
  const QuinticScaling scaling(theta0.radians(), theta0.radians() + joint_travel(theta0, theta1, direction),
                               duration);
  TrajectoryProfile out{{}, duration, frequency};
  out.samples.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double time = i == n ? duration : i / frequency;
    const auto st = scaling(time);
    out.samples.push_back({i / frequency, i == n ? theta1.radians() : wrap_angle(st.theta), st.omega});
  }
  return out;
}

Vec3 tool_point(const Mechanism& m) { return act_on_point(m.tool_home(), Vec3{0, 0, 0}); }

PathTraversal make_traversal(const Mechanism& m, const Vec3& tool, JointAngle theta0,
                             JointAngle theta1, TravelDirection direction,
                             const SimpsonOptions& opts) {
  const MotionParam t0 = angle_to_param(theta0, m.driving_axis());
  const MotionParam t1 = angle_to_param(theta1, m.driving_axis());
  if (direction == TravelDirection::IncreasingT || direction == TravelDirection::DecreasingT)
    return PathTraversal{m.motion(), tool, t0, t1, direction, opts};
  PathTraversal up{m.motion(), tool, t0, t1, TravelDirection::IncreasingT, opts};
  PathTraversal down{m.motion(), tool, t0, t1, TravelDirection::DecreasingT, opts};
  const bool up_shorter = up.total_length() <= down.total_length();
  if (direction == TravelDirection::ShortArc) return up_shorter ? up : down;
  return up_shorter ? down : up;
}

namespace {

/// Time warp with quintic velocity ramps over `a` of [0, 1] at each end and
/// constant slope in between; w(0) = 0, w(1) = 1, w'(0) = w'(1) = 0.
double blend_warp(double tau, double a) {
  const double slope = 1.0 / (1.0 - a);
  auto ramp_integral = [](double x) {  // ∫₀ˣ (10y³ − 15y⁴ + 6y⁵) dy
    const double x4 = x * x * x * x;
    return x4 * (2.5 - 3.0 * x + x * x);
  };
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  if (tau < a) return slope * a * ramp_integral(tau / a);
  if (tau > 1.0 - a) return 1.0 - slope * a * ramp_integral((1.0 - tau) / a);
  return slope * (0.5 * a + (tau - a));
}

}  // namespace

TrajectoryProfile equidistant_profile(const Mechanism& m, const Vec3& tool, JointAngle theta0,
                                      JointAngle theta1, double duration, double frequency,
                                      TravelDirection direction, const EquidistantOptions& opts) {
  const int n = step_count(duration, frequency);
  const PathTraversal traversal = make_traversal(m, tool, theta0, theta1, direction);
  const PathSegmentation seg =
      equidistant_segmentation(traversal, n, m.driving_axis(), opts.bisection);

  // θ grows along a −t traversal and shrinks along a +t traversal.
  const TravelDirection resolved = traversal.direction();
  const double travel = joint_travel(theta0, theta1, resolved);
  const double sign = resolved == TravelDirection::DecreasingT ? 1.0 : -1.0;
  std::vector<double> unwrapped(seg.angles.size());
  for (std::size_t i = 0; i < seg.angles.size(); ++i) {
    double d = wrap_angle(sign * (seg.angles[i].radians() - theta0.radians()));
    if (d > std::abs(travel) + 1e-9) d = 0.0;  // rounding just behind the start
    unwrapped[i] = theta0.radians() + sign * d;
  }
  unwrapped.front() = theta0.radians();
  unwrapped.back() = theta0.radians() + travel;

  std::vector<double> theta = unwrapped;
  if (opts.blend) {
    const double a = std::clamp(opts.blend_fraction, 1e-6, 0.5);
    for (int i = 0; i <= n; ++i) {
      const double x = blend_warp(static_cast<double>(i) / n, a) * n;
      const int k = std::min(static_cast<int>(x), n - 1);
      const double frac = x - k;
      theta[i] = unwrapped[k] + frac * (unwrapped[k + 1] - unwrapped[k]);
    }
  }

  TrajectoryProfile out{{}, duration, frequency};
  out.samples.reserve(theta.size());
  for (int i = 0; i <= n; ++i) {
    const int j = i < n ? i : n - 1;
    const double omega = (theta[j + 1] - theta[j]) * frequency;
    const double wrapped = i == n ? theta1.radians() : wrap_angle(theta[i]);
    out.samples.push_back({i / frequency, wrapped, omega});
  }
  return out;
}

}  // namespace ratlink
