#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ratlink/dual_quaternion.hpp"

namespace ratlink {

/// Motion parameter t ∈ ℝ ∪ {∞}. Infinity is a tag, never an IEEE infinity.
class MotionParam {
 public:
  constexpr MotionParam() = default;
  constexpr MotionParam(double t) : value_(t) {}  // NOLINT: implicit from real is intended

  static constexpr MotionParam infinity() {
    MotionParam p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Finite value; 0 for infinity.
  constexpr double value() const { return infinite_ ? 0.0 : value_; }

  friend constexpr bool operator==(const MotionParam&, const MotionParam&) = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Real polynomial, coefficients by ascending power.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  double operator()(double t) const;
  RealPolynomial derivative() const;
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  double max_abs_coeff() const;

 private:
  std::vector<double> coeffs_;
};

/// Polynomial with dual quaternion coefficients (ascending powers) and no
/// Study requirement. Used for derivatives and intermediate products.
class DQPolynomial {
 public:
  DQPolynomial() = default;
  explicit DQPolynomial(std::vector<DualQuaternion> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Horner evaluation.
  DualQuaternion operator()(double t) const;
  DQPolynomial derivative() const;
  DQPolynomial conjugate() const;
  DQPolynomial eps_conjugate() const;
  /// t^d · P(1/t): the coefficient list reversed.
  DQPolynomial reversed() const;

  const std::vector<DualQuaternion>& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  /// Number of coefficients minus one; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double max_abs_coeff() const;

  friend DQPolynomial operator*(const DQPolynomial& a, const DQPolynomial& b);
  friend DQPolynomial operator*(const DQPolynomial& a, const DualQuaternion& b);

 private:
  std::vector<DualQuaternion> coeffs_;
};

/// Homogeneous tool path (x0, x1, x2, x3) traced by a point under a motion.
struct RationalPointPath {
  RealPolynomial x0;
  RealPolynomial x1;
  RealPolynomial x2;
  RealPolynomial x3;

  /// Dehomogenized point at t; caller guarantees x0(t) ≠ 0.
  Vec3 point(double t) const;
  /// d/dt of the dehomogenized point, by the quotient rule.
  Vec3 velocity(double t) const;
};

/// Largest |coefficient| of the dual and vector parts of C·C*, relative to the
/// largest primal scalar coefficient. Zero for an exact motion polynomial.
double study_defect(const DQPolynomial& p);

/// Univariate motion polynomial C(t) whose values are Study quaternions.
/// The Study condition is verified once, at construction.
class MotionPolynomial {
 public:
  /// Throws StudyViolation if C·C* is not a nonzero real polynomial within
  /// `study_tolerance`, or if the leading coefficient vanishes.
  explicit MotionPolynomial(std::vector<DualQuaternion> coeffs,
                            double study_tolerance = tol::kStudy);
  explicit MotionPolynomial(DQPolynomial poly, double study_tolerance = tol::kStudy);

  /// Π (t − h_i) in the given order. Throws StudyViolation for an axis that is
  /// not a Plücker line or a product that fails the Study condition.
  static MotionPolynomial from_axes(std::span<const DualQuaternion> axes,
                                    double study_tolerance = tol::kStudy);

  /// Horner value at finite t, leading coefficient at infinity.
  /// Throws OnBorderOfDomain if C(t)C(t)* vanishes.
  DualQuaternion evaluate(MotionParam t) const;
  DualQuaternion operator()(MotionParam t) const { return evaluate(t); }

  DQPolynomial derivative() const { return poly_.derivative(); }
  /// C′(t′) = t′^d C(1/t′).
  MotionPolynomial reparameterize_reciprocal() const;

  /// Homogeneous path of `point` (an embedded point) under C.
  RationalPointPath point_path(const DualQuaternion& point) const;
  RationalPointPath point_path(const Vec3& point) const { return point_path(make_point(point)); }

  /// Real polynomial C·C* (primal scalar part).
  RealPolynomial norm_polynomial() const;

  const DQPolynomial& poly() const { return poly_; }
  const std::vector<DualQuaternion>& coeffs() const { return poly_.coeffs(); }
  int degree() const { return poly_.degree(); }
  double study_tolerance() const { return study_tolerance_; }
  double study_defect() const { return defect_; }

 private:
  DQPolynomial poly_;
  double study_tolerance_;
  double defect_ = 0.0;
};

}  // namespace ratlink
