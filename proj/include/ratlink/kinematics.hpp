#pragma once

#include <array>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "ratlink/errors.hpp"
#include "ratlink/execution.hpp"
#include "ratlink/motion_polynomial.hpp"

namespace ratlink {

/// Driving joint angle, always wrapped to [0, 2π).
class JointAngle {
 public:
  constexpr JointAngle() = default;
  explicit JointAngle(double radians);

  constexpr double radians() const { return value_; }
  friend constexpr bool operator==(const JointAngle&, const JointAngle&) = default;

 private:
  double value_ = 0.0;
};

/// Driving axis quaternion q = q0 + q1 i + q2 j + q3 k. The vector part gives
/// the axis scale, q0 the parameter offset.
struct DrivingAxis {
  std::array<double, 4> q{0, 1, 0, 0};

  double offset() const { return q[0]; }
  double axis_norm() const;
};

/// t = |r| / tan(θ/2) + q0. θ = 0 maps to infinity, θ = π to q0 exactly.
MotionParam angle_to_param(JointAngle theta, const DrivingAxis& axis);
/// θ = 2 atan(|r| / (t − q0)) wrapped to [0, 2π).
JointAngle param_to_angle(MotionParam t, const DrivingAxis& axis);

/// A 1-DoF rational linkage: motion polynomial, driving axis, home tool pose.
class Mechanism {
 public:
  /// Throws StudyViolation if the tool pose fails the motion's Study tolerance
  /// and SchemaError if the driving axis has no vector part.
  Mechanism(MotionPolynomial motion, DrivingAxis axis,
            DualQuaternion tool_home = DualQuaternion::identity());

  const MotionPolynomial& motion() const { return motion_; }
  const DrivingAxis& driving_axis() const { return axis_; }
  const DualQuaternion& tool_home() const { return tool_home_; }
  /// Tolerance for the motion and the tool pose.
  double study_tolerance() const { return motion_.study_tolerance(); }
  /// Study tolerance for IK targets: the larger of study_tolerance() and twice
  /// the worst relative defect of the mechanism's own poses, so that every pose
  /// the mechanism produces is accepted. Equal to study_tolerance() for exact
  /// motions; larger for motions with rounded coefficients.
  double pose_tolerance() const { return pose_tolerance_; }

 private:
  MotionPolynomial motion_;
  DrivingAxis axis_;
  DualQuaternion tool_home_;
  double pose_tolerance_ = 0.0;
};

/// p = C(t(θ)) p_h. Propagates OnBorderOfDomain.
DualQuaternion direct_kinematics(const Mechanism& m, JointAngle theta);

std::vector<DualQuaternion> direct_kinematics_batch(const Mechanism& m,
                                                    std::span<const double> thetas,
                                                    Execution exec = Execution::Parallel);

struct IKOptions {
  double success_tol = 1e-10;  // on ‖E‖²
  int max_iters = 100;         // per seed
  int n_seeds = 21;
  int max_halvings = 30;
  Execution exec = Execution::Parallel;
};

enum class IKBranch { Direct, Reciprocal };
constexpr std::string_view to_string(IKBranch b) {
  return b == IKBranch::Direct ? "direct" : "reciprocal";
}

struct IKResult {
  MotionParam t;
  JointAngle theta;
  double residual = 0.0;
  int iterations = 0;
  IKBranch branch = IKBranch::Direct;
  /// ‖E‖² after each accepted step of the winning seed, starting at the seed.
  std::vector<double> residual_history;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, IKResult best)
      : Error(ErrorKind::NoConvergence, message), best_(std::move(best)) {}
  /// Best-effort solution; its residual exceeds the success tolerance.
  const IKResult& best_effort() const { return best_; }

 private:
  IKResult best_;
};

/// Error E(t) = p̂ − Ĉ(t) between a fixed target and a curve, both normalized
/// the same way: by the first coordinate when it is usable on both sides,
/// otherwise to unit norm with Ĉ's sign aligned to p̂.
class NormalizedPoseError {
 public:
  NormalizedPoseError(DQPolynomial curve, const DualQuaternion& target);

  struct Sample {
    std::array<double, 8> error;       // E(t)
    std::array<double, 8> derivative;  // dĈ/dt
    double residual;                   // ‖E‖²
  };

  Sample operator()(double t) const;
  /// ‖E(t)‖² only.
  double residual(double t) const;
  /// Squared distance of the unit-norm, sign-aligned representatives. Unlike
  /// residual() it uses one normalization for every t, so values compare.
  double projective_residual(double t) const;

  const DQPolynomial& curve() const { return curve_; }

 private:
  DQPolynomial curve_;
  DQPolynomial curve_derivative_;
  DualQuaternion target_first_;
  DualQuaternion target_unit_;
  bool target_first_usable_;
};

/// Outcome of damped Gauss–Newton from one seed.
struct SeedRefinement {
  double t = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;
};

/// Iterates t ← t + λ (dĈ·E)/(dĈ·dĈ), halving λ until ‖E‖² decreases and
/// resetting it to 1 after every accepted step.
SeedRefinement refine_seed(const NormalizedPoseError& error, double seed, const IKOptions& opts);

/// n uniformly spaced samples of [−1, 1], ordered by ascending projective
/// residual (ties keep grid order).
std::vector<double> ik_seed_grid(const MotionPolynomial& c, const DualQuaternion& target,
                                 int n_seeds);

/// One-parameter inverse kinematics. Searches C over seeds in [−1, 1]; if no
/// solution lands in that interval, repeats on the reciprocal reparameterization
/// and maps t = 1/t′ back (t′ = 0 gives infinity).
/// Throws InvalidPose for a target outside m.pose_tolerance() and
/// NoConvergenceError otherwise.
IKResult inverse_kinematics(const Mechanism& m, const DualQuaternion& pose,
                            const IKOptions& opts = {});

}  // namespace ratlink
