#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>

namespace ratlink {

using Vec3 = std::array<double, 3>;

namespace tol {
/// Structural checks (zero scalar parts, Plücker condition, zero elements).
inline constexpr double kStructural = 1e-9;
/// Study condition and degeneracy of hh*.
inline constexpr double kStudy = 1e-9;
/// Below this the first coordinate is not used as the normalizing entry.
inline constexpr double kCanonical = 1e-6;
}  // namespace tol

/// Element p0 + p1 i + p2 j + p3 k + ε(p4 + p5 i + p6 j + p7 k).
///
/// Coefficients are stored in that order. No normalization is applied;
/// projective representatives are chosen explicitly with normalize_canonical().
/// Study quaternions, Plücker lines and embedded points are validated views
/// over this one type (see is_study(), is_line(), is_point()).
struct DualQuaternion {
  std::array<double, 8> c{};

  constexpr DualQuaternion() = default;
  constexpr explicit DualQuaternion(const std::array<double, 8>& coeffs) : c(coeffs) {}
  constexpr DualQuaternion(double p0, double p1, double p2, double p3, double p4,
                           double p5, double p6, double p7)
      : c{p0, p1, p2, p3, p4, p5, p6, p7} {}

  static constexpr DualQuaternion identity() { return {1, 0, 0, 0, 0, 0, 0, 0}; }
  static constexpr DualQuaternion zero() { return {}; }
  static constexpr DualQuaternion real(double r) { return {r, 0, 0, 0, 0, 0, 0, 0}; }

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  /// p_a* + ε p_b*
  constexpr DualQuaternion conjugate() const {
    return {c[0], -c[1], -c[2], -c[3], c[4], -c[5], -c[6], -c[7]};
  }
  /// p_a − ε p_b
  constexpr DualQuaternion eps_conjugate() const {
    return {c[0], c[1], c[2], c[3], -c[4], -c[5], -c[6], -c[7]};
  }

  constexpr DualQuaternion& operator+=(const DualQuaternion& o) {
    for (std::size_t i = 0; i < 8; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr DualQuaternion& operator-=(const DualQuaternion& o) {
    for (std::size_t i = 0; i < 8; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr DualQuaternion& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const DualQuaternion&, const DualQuaternion&) = default;
};

constexpr DualQuaternion operator+(DualQuaternion a, const DualQuaternion& b) { return a += b; }
constexpr DualQuaternion operator-(DualQuaternion a, const DualQuaternion& b) { return a -= b; }
constexpr DualQuaternion operator-(DualQuaternion a) { return a *= -1.0; }
constexpr DualQuaternion operator*(DualQuaternion a, double s) { return a *= s; }
constexpr DualQuaternion operator*(double s, DualQuaternion a) { return a *= s; }

/// Dual quaternion product (ε² = 0, i² = j² = k² = ijk = −1).
constexpr DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
  // Hamilton product of the quaternions starting at offsets ia and ib.
  auto qmul = [](const std::array<double, 8>& x, std::size_t ia,
                 const std::array<double, 8>& y, std::size_t ib) {
    const double a0 = x[ia], a1 = x[ia + 1], a2 = x[ia + 2], a3 = x[ia + 3];
    const double b0 = y[ib], b1 = y[ib + 1], b2 = y[ib + 2], b3 = y[ib + 3];
    return std::array<double, 4>{a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                                 a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                                 a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                                 a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0};
  };
  const auto pp = qmul(a.c, 0, b.c, 0);
  const auto pd = qmul(a.c, 0, b.c, 4);
  const auto dp = qmul(a.c, 4, b.c, 0);
  return {pp[0], pp[1], pp[2], pp[3],
          pd[0] + dp[0], pd[1] + dp[1], pd[2] + dp[2], pd[3] + dp[3]};
}

inline DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) { return a * b; }

/// Real and dual scalar parts of a·a*. The vector parts vanish identically.
struct NormPair {
  double primal;
  double dual;
};

constexpr NormPair norm_pair(const DualQuaternion& a) {
  const auto& c = a.c;
  return {c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3],
          2.0 * (c[0] * c[4] + c[1] * c[5] + c[2] * c[6] + c[3] * c[7])};
}

double max_abs(const DualQuaternion& a);
double euclidean_norm(const DualQuaternion& a);

/// |dual| / primal of hh*, a scale-free distance from the Study quadric.
/// Infinite when the primal part is negligible against the whole element.
double relative_study_defect(const DualQuaternion& h);
/// hh* is a nonzero real up to `tolerance` (see relative_study_defect()).
bool is_study(const DualQuaternion& h, double tolerance = tol::kStudy);
bool is_line(const DualQuaternion& l, double tolerance = tol::kStructural);
bool is_point(const DualQuaternion& x);

/// Point (x1, x2, x3) embedded as 1 + ε(x1 i + x2 j + x3 k).
constexpr DualQuaternion make_point(const Vec3& x) { return {1, 0, 0, 0, 0, x[0], x[1], x[2]}; }
constexpr Vec3 point_coords(const DualQuaternion& p) { return {p[5], p[6], p[7]}; }

/// Pure translation by v, i.e. 1 − ½ε v (acts as x ↦ x + v).
constexpr DualQuaternion make_translation(const Vec3& v) {
  return {1, 0, 0, 0, 0, -0.5 * v[0], -0.5 * v[1], -0.5 * v[2]};
}

/// Plücker line with direction `direction` through `point`: ℓ = p − ½ε(pq − qp).
/// Throws ZeroDirection for a vanishing direction.
DualQuaternion line_from_point_direction(const Vec3& direction, const Vec3& point);

/// Displacement action h_ε (1 + εx) h* / (hh*) on an embedded point.
/// Throws DegenerateDisplacement when hh* vanishes.
DualQuaternion act_on_point(const DualQuaternion& h, const DualQuaternion& point);
Vec3 act_on_point(const DualQuaternion& h, const Vec3& point);

/// Canonical projective representative: divide by c0 when |c0| > tol::kCanonical,
/// otherwise unit euclidean norm with the first nonzero coordinate positive.
/// Throws ZeroElement for the zero element.
DualQuaternion normalize_canonical(const DualQuaternion& a);

/// Unit-norm representative with the first nonzero coordinate positive.
DualQuaternion normalize_unit(const DualQuaternion& a);

std::ostream& operator<<(std::ostream& os, const DualQuaternion& a);

}  // namespace ratlink
