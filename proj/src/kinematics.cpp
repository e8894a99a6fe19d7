#include "ratlink/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace ratlink {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Iterates beyond this magnitude belong to the other chart.
constexpr double kEscape = 1e12;

double dot8(const std::array<double, 8>& a, const std::array<double, 8>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

JointAngle::JointAngle(double radians) {
  double v = std::fmod(radians, kTwoPi);
  if (v < 0) v += kTwoPi;
  if (v >= kTwoPi) v = 0.0;
  value_ = v;
}

double DrivingAxis::axis_norm() const { return std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]); }

MotionParam angle_to_param(JointAngle theta, const DrivingAxis& axis) {
  const double th = theta.radians();
  if (th == 0.0) return MotionParam::infinity();
  if (th == std::numbers::pi) return MotionParam{axis.offset()};
  return MotionParam{axis.axis_norm() / std::tan(0.5 * th) + axis.offset()};
}

JointAngle param_to_angle(MotionParam t, const DrivingAxis& axis) {
  if (t.is_infinite()) return JointAngle{0.0};
  const double d = t.value() - axis.offset();
  if (d == 0.0) return JointAngle{std::numbers::pi};
  return JointAngle{2.0 * std::atan(axis.axis_norm() / d)};
}

Mechanism::Mechanism(MotionPolynomial motion, DrivingAxis axis, DualQuaternion tool_home)
    : motion_(std::move(motion)), axis_(axis), tool_home_(tool_home) {
  if (axis_.axis_norm() <= tol::kStructural) {
    throw Error(ErrorKind::SchemaError, "driving axis quaternion has zero vector part");
  }
  if (!is_study(tool_home_, motion_.study_tolerance())) {
    std::ostringstream msg;
    const auto n = norm_pair(tool_home_);
    msg << "tool_home is not a Study quaternion (hh* = " << n.primal << " + eps " << n.dual << ")";
    throw Error(ErrorKind::StudyViolation, msg.str());
  }
  // Scan θ (t = ∞ included) for the worst defect of the mechanism's own poses.
  double worst = 0.0;
  constexpr int kSamples = 720;
  for (int i = 0; i < kSamples; ++i) {
    const JointAngle theta{2.0 * std::numbers::pi * i / kSamples};
    try {
      worst = std::max(worst, relative_study_defect(
                                  motion_.evaluate(angle_to_param(theta, axis_)) * tool_home_));
    } catch (const Error&) {
      // a real root of the norm polynomial; no pose there
    }
  }
  pose_tolerance_ = std::max(motion_.study_tolerance(), 2.0 * worst);
}

DualQuaternion direct_kinematics(const Mechanism& m, JointAngle theta) {
  return m.motion().evaluate(angle_to_param(theta, m.driving_axis())) * m.tool_home();
}

std::vector<DualQuaternion> direct_kinematics_batch(const Mechanism& m,
                                                    std::span<const double> thetas,
                                                    Execution exec) {
  std::vector<DualQuaternion> out(thetas.size());
  const auto n = static_cast<std::ptrdiff_t>(thetas.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = direct_kinematics(m, JointAngle{thetas[i]});
    return out;
  }
  // Exceptions cannot leave an OpenMP region; keep the first one and rethrow.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = direct_kinematics(m, JointAngle{thetas[i]});
    } catch (...) {
#pragma omp critical(ratlink_dk_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

NormalizedPoseError::NormalizedPoseError(DQPolynomial curve, const DualQuaternion& target)
    : curve_(std::move(curve)),
      curve_derivative_(curve_.derivative()),
      target_unit_(normalize_unit(target)) {
  target_first_usable_ = std::abs(target_unit_[0]) > tol::kCanonical;
  if (target_first_usable_) {
    for (std::size_t i = 0; i < 8; ++i) target_first_[i] = target[i] / target[0];
  }
}

NormalizedPoseError::Sample NormalizedPoseError::operator()(double t) const {
  const DualQuaternion c = curve_(t);
  const DualQuaternion dc = curve_derivative_(t);
  const double norm = euclidean_norm(c);
  Sample s{};
  if (target_first_usable_ && std::abs(c[0]) > tol::kCanonical * norm) {
    const double w = c[0];
    const double dw = dc[0];
    for (std::size_t i = 0; i < 8; ++i) {
      s.error[i] = target_first_[i] - c[i] / w;
      s.derivative[i] = (dc[i] * w - c[i] * dw) / (w * w);
    }
  } else {
    double sign = dot8(target_unit_.c, c.c) < 0 ? -1.0 : 1.0;
    std::array<double, 8> unit{};
    for (std::size_t i = 0; i < 8; ++i) unit[i] = c[i] / norm;
    const double radial = dot8(unit, dc.c);
    for (std::size_t i = 0; i < 8; ++i) {
      s.error[i] = target_unit_[i] - sign * unit[i];
      s.derivative[i] = sign * (dc[i] - unit[i] * radial) / norm;
    }
  }
  s.residual = dot8(s.error, s.error);
  return s;
}

double NormalizedPoseError::residual(double t) const { return (*this)(t).residual; }

double NormalizedPoseError::projective_residual(double t) const {
  const DualQuaternion c = curve_(t);
  const double norm = euclidean_norm(c);
  if (!(norm > 0.0)) return std::numeric_limits<double>::infinity();
  const double sign = dot8(target_unit_.c, c.c) < 0 ? -1.0 : 1.0;
  double r = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double d = target_unit_[i] - sign * c[i] / norm;
    r += d * d;
  }
  return r;
}

SeedRefinement refine_seed(const NormalizedPoseError& error, double seed, const IKOptions& opts) {
  SeedRefinement out;
  out.t = seed;
  auto sample = error(seed);
  out.residual = std::isfinite(sample.residual) ? sample.residual
                                                : std::numeric_limits<double>::infinity();
  out.residual_history.push_back(out.residual);

  while (out.iterations < opts.max_iters && out.residual > 0.0) {
    const double gram = dot8(sample.derivative, sample.derivative);
    if (!(gram > 0.0) || !std::isfinite(gram)) break;
    const double increment = dot8(sample.derivative, sample.error) / gram;

    double lambda = 1.0;
    bool accepted = false;
    double step = 0.0;
    for (int h = 0; h <= opts.max_halvings; ++h, lambda *= 0.5) {
      step = lambda * increment;
      const double candidate_t = out.t + step;
      const auto candidate = error(candidate_t);
      if (std::isfinite(candidate.residual) && candidate.residual < out.residual) {
        out.t = candidate_t;
        out.residual = candidate.residual;
        sample = candidate;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++out.iterations;
    out.residual_history.push_back(out.residual);
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(out.t)))
      break;
    if (std::abs(out.t) > kEscape) break;
  }
  return out;
}

std::vector<double> ik_seed_grid(const MotionPolynomial& c, const DualQuaternion& target,
                                 int n_seeds) {
  if (n_seeds < 1) throw Error(ErrorKind::SchemaError, "n_seeds must be at least 1");
  const NormalizedPoseError error(c.poly(), target);
  std::vector<std::pair<double, double>> ranked;  // (residual, t)
  ranked.reserve(static_cast<std::size_t>(n_seeds));
  for (int i = 0; i < n_seeds; ++i) {
    const double t = n_seeds == 1 ? 0.0 : -1.0 + 2.0 * i / (n_seeds - 1);
    ranked.emplace_back(error.projective_residual(t), t);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> seeds;
  seeds.reserve(ranked.size());
  for (const auto& [r, t] : ranked) seeds.push_back(t);
  return seeds;
}

namespace {

struct BranchOutcome {
  std::optional<SeedRefinement> in_window;  // converged with |t| ≤ 1
  std::optional<SeedRefinement> converged;  // converged anywhere
  SeedRefinement best;                      // smallest residual overall
};

bool better(const SeedRefinement& a, const SeedRefinement& b) {
  if (a.residual != b.residual) return a.residual < b.residual;
  return std::abs(a.t) < std::abs(b.t);
}

BranchOutcome search_branch(const MotionPolynomial& c, const DualQuaternion& target,
                            const IKOptions& opts) {
  const NormalizedPoseError error(c.poly(), target);
  const auto seeds = ik_seed_grid(c, target, opts.n_seeds);
  std::vector<SeedRefinement> results(seeds.size());
  const auto n = static_cast<std::ptrdiff_t>(seeds.size());
  if (opts.exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = refine_seed(error, seeds[i], opts);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) results[i] = refine_seed(error, seeds[i], opts);
  }

  // Merge in seed order so the outcome does not depend on scheduling.
  BranchOutcome out;
  out.best = results.front();
  for (const auto& r : results) {
    if (better(r, out.best)) out.best = r;
    if (!(r.residual <= opts.success_tol)) continue;
    if (!out.converged || better(r, *out.converged)) out.converged = r;
    if (std::abs(r.t) <= 1.0 && (!out.in_window || better(r, *out.in_window))) out.in_window = r;
  }
  return out;
}

IKResult make_result(const SeedRefinement& r, IKBranch branch, const DrivingAxis& axis) {
  IKResult out;
  out.branch = branch;
  out.residual = r.residual;
  out.iterations = r.iterations;
  out.residual_history = r.residual_history;
  if (branch == IKBranch::Direct) {
    out.t = MotionParam{r.t};
  } else {
    out.t = r.t == 0.0 ? MotionParam::infinity() : MotionParam{1.0 / r.t};
  }
  out.theta = param_to_angle(out.t, axis);
  return out;
}

}  // namespace

IKResult inverse_kinematics(const Mechanism& m, const DualQuaternion& pose, const IKOptions& opts) {
  if (!is_study(pose, m.pose_tolerance())) {
    const auto n = norm_pair(pose);
    std::ostringstream msg;
    msg << "target pose is not a Study quaternion (pp* = " << n.primal << " + eps " << n.dual
        << ")";
    throw Error(ErrorKind::InvalidPose, msg.str());
  }
  // C(t) p_h = p  ⇔  C(t) ∼ p p_h*
  const DualQuaternion target = pose * m.tool_home().conjugate();

  const auto direct = search_branch(m.motion(), target, opts);
  if (direct.in_window) return make_result(*direct.in_window, IKBranch::Direct, m.driving_axis());

  const auto reciprocal = search_branch(m.motion().reparameterize_reciprocal(), target, opts);
  if (reciprocal.in_window)
    return make_result(*reciprocal.in_window, IKBranch::Reciprocal, m.driving_axis());

  if (direct.converged && (!reciprocal.converged || better(*direct.converged, *reciprocal.converged)))
    return make_result(*direct.converged, IKBranch::Direct, m.driving_axis());
  if (reciprocal.converged)
    return make_result(*reciprocal.converged, IKBranch::Reciprocal, m.driving_axis());

  const bool direct_best = better(direct.best, reciprocal.best);
  IKResult best = direct_best ? make_result(direct.best, IKBranch::Direct, m.driving_axis())
                              : make_result(reciprocal.best, IKBranch::Reciprocal, m.driving_axis());
  std::ostringstream msg;
  msg << "no solution with residual <= " << opts.success_tol << " (best " << best.residual
      << " at theta " << best.theta.radians() << ")";
  throw NoConvergenceError(msg.str(), std::move(best));
}

}  // namespace ratlink
