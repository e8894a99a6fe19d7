#pragma once

#include <string_view>
#include <vector>

#include "ratlink/execution.hpp"
#include "ratlink/kinematics.hpp"
#include "ratlink/motion_polynomial.hpp"
#include "ratlink/quadrature.hpp"

namespace ratlink {

/// Positive length of the dehomogenized path over [min(t0,t1), max(t0,t1)].
/// Throws PoleOnPath if x0 vanishes on the interval, QuadratureFailure if the
/// adaptive scheme cannot meet its tolerance.
double arc_length(const RationalPointPath& path, double t0, double t1,
                  const SimpsonOptions& opts = {});

/// Which of the two arcs between two parameters is travelled.
enum class TravelDirection { IncreasingT, DecreasingT, ShortArc, LongArc };

/// A traversal of a tool path between two motion parameters that may pass
/// through t = ∞. The projective parameter line is covered by two charts:
/// t ∈ [−1, 1] on C and u = 1/t ∈ [−1, 1] on the reciprocal motion. The
/// traversal is parameterized by σ ∈ [0, span()], the accumulated chart
/// parameter, which moves monotonically along the chosen direction.
class PathTraversal {
 public:
  /// Two-chart traversal of the path of `tool` under `motion`. `direction`
  /// must be IncreasingT or DecreasingT.
  PathTraversal(const MotionPolynomial& motion, const Vec3& tool, MotionParam start,
                MotionParam end, TravelDirection direction, const SimpsonOptions& opts = {});

  /// Single-chart traversal of a finite interval of `path`.
  static PathTraversal finite(const RationalPointPath& path, double t0, double t1,
                              const SimpsonOptions& opts = {});

  double span() const { return span_; }
  double total_length() const { return total_length_; }
  /// Arc length from the start up to σ.
  double length_to(double sigma) const;
  /// Arc length between σa ≤ σb.
  double length_between(double sigma_a, double sigma_b) const;
  MotionParam param_at(double sigma) const;
  Vec3 point_at(double sigma) const;
  /// IncreasingT or DecreasingT.
  TravelDirection direction() const { return direction_; }
  MotionParam start() const { return start_; }
  MotionParam end() const { return end_; }

 private:
  struct Piece {
    bool reciprocal;  // chart variable is u = 1/t on the reciprocal path
    double u_from;
    double u_to;
    double sigma_from;
    double sigma_to;
    double length;
    double length_before;
  };

  PathTraversal() = default;
  void finalize_pieces();
  const RationalPointPath& chart(const Piece& p) const { return p.reciprocal ? reciprocal_ : direct_; }
  std::size_t piece_index(double sigma) const;
  double chart_coord(const Piece& p, double sigma) const;
  double piece_length(const Piece& p, double u_a, double u_b) const;

  RationalPointPath direct_;
  RationalPointPath reciprocal_;
  std::vector<Piece> pieces_;
  SimpsonOptions opts_;
  TravelDirection direction_ = TravelDirection::IncreasingT;
  MotionParam start_;
  MotionParam end_;
  double span_ = 0.0;
  double total_length_ = 0.0;
};

struct PathSegmentation {
  std::vector<MotionParam> params;  // t_0 .. t_n
  std::vector<JointAngle> angles;   // θ_0 .. θ_n
  double segment_length = 0.0;      // s_l
  double total_length = 0.0;        // s
};

struct BisectionOptions {
  double relative_tol = 1e-8;  // tolerance on segment length is s · relative_tol
  int max_iters = 200;
  Execution exec = Execution::Parallel;
};

/// Splits a traversal into n segments of equal arc length. Each knot is found
/// by bisection on σ. Throws BisectionFailure if a knot does not meet the
/// tolerance within `max_iters` halvings.
PathSegmentation equidistant_segmentation(const PathTraversal& traversal, int n,
                                          const DrivingAxis& axis,
                                          const BisectionOptions& opts = {});

/// Equidistant split of a finite interval t0 → t1 of `path`.
PathSegmentation equidistant_params(const RationalPointPath& path, double t0, double t1, int n,
                                    const DrivingAxis& axis, const BisectionOptions& opts = {});

/// Quintic time scaling s(τ) = 10τ³ − 15τ⁴ + 6τ⁵ between two (unwrapped) angles.
class QuinticScaling {
 public:
  QuinticScaling(double theta_start, double theta_end, double duration);

  struct State {
    double theta;  // unwrapped
    double omega;
  };
  State operator()(double time) const;
  double peak_velocity() const;

 private:
  double start_;
  double delta_;
  double duration_;
};

QuinticScaling quintic_time_scaling(JointAngle start, JointAngle end, double duration);

struct ProfileSample {
  double time;
  double theta;  // wrapped to [0, 2π)
  double omega;
};

struct TrajectoryProfile {
  std::vector<ProfileSample> samples;
  double duration = 0.0;
  double frequency = 0.0;
};

/// Signed joint travel from θ0 to θ1. IncreasingT travels towards smaller θ.
/// ShortArc/LongArc pick the smaller/larger angular arc.
double joint_travel(JointAngle theta0, JointAngle theta1, TravelDirection direction);

/// round(T·f) steps of uniform θ spacing at constant velocity.
TrajectoryProfile linear_profile(JointAngle theta0, JointAngle theta1, double duration,
                                 double frequency, TravelDirection direction);

/// Quintic time scaling sampled at the control frequency.
TrajectoryProfile quintic_profile(JointAngle theta0, JointAngle theta1, double duration,
                                  double frequency, TravelDirection direction);

struct EquidistantOptions {
  /// Smooth start and stop with quintic velocity ramps over `blend_fraction`
  /// of the duration at each end.
  bool blend = false;
  double blend_fraction = 0.1;
  BisectionOptions bisection{};
};

/// Joint profile for which the tool point covers equal path length per tick.
/// ShortArc/LongArc compare the tool path lengths of both arcs.
TrajectoryProfile equidistant_profile(const Mechanism& m, const Vec3& tool, JointAngle theta0,
                                      JointAngle theta1, double duration, double frequency,
                                      TravelDirection direction,
                                      const EquidistantOptions& opts = {});

/// Traversal of the tool path between two joint angles; ShortArc/LongArc are
/// resolved by tool path length.
PathTraversal make_traversal(const Mechanism& m, const Vec3& tool, JointAngle theta0,
                             JointAngle theta1, TravelDirection direction,
                             const SimpsonOptions& opts = {});

/// Tool position of the home tool frame origin, i.e. p_h acting on the origin.
Vec3 tool_point(const Mechanism& m);

}  // namespace ratlink
