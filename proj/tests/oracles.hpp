#pragma once

// Test-only reference computations. They use nothing from the quadrature,
// bisection or Gauss-Newton code paths they check.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ratlink/motion_polynomial.hpp"

namespace oracles {

/// Tool point position by evaluating C(t) and acting on the point directly.
inline ratlink::Vec3 position(const ratlink::MotionPolynomial& c, const ratlink::Vec3& tool,
                              double t) {
  return ratlink::act_on_point(c.poly()(t), tool);
}

/// Speed by central differences of positions.
inline double fd_speed(const ratlink::MotionPolynomial& c, const ratlink::Vec3& tool, double t,
                       double h = 1e-5) {
  const auto a = position(c, tool, t + h);
  const auto b = position(c, tool, t - h);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s) / (2.0 * h);
}

/// Composite trapezoid rule with `intervals` panels over [a, b].
inline double trapezoid_arc_length(const ratlink::MotionPolynomial& c, const ratlink::Vec3& tool,
                                   double a, double b, std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double sum = 0.5 * (fd_speed(c, tool, a) + fd_speed(c, tool, b));
  for (std::size_t i = 1; i < intervals; ++i) sum += fd_speed(c, tool, a + h * static_cast<double>(i));
  return std::abs(sum * h);
}

/// ‖p/p0 − C(t)/C0(t)‖² by direct evaluation.
inline double first_coord_residual(const ratlink::MotionPolynomial& c,
                                   const ratlink::DualQuaternion& p, double t) {
  const auto v = c.poly()(t);
  double r = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double d = p[i] / p[0] - v[i] / v[0];
    r += d * d;
  }
  return r;
}

/// Squared distance between unit-norm representatives of p and C(t), with the
/// sign of C(t) chosen to face p.
inline double projective_residual(const ratlink::MotionPolynomial& c,
                                  const ratlink::DualQuaternion& p, double t) {
  const auto v = c.poly()(t);
  double np = 0.0, nv = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    np += p[i] * p[i];
    nv += v[i] * v[i];
    dot += p[i] * v[i];
  }
  const double s = dot < 0 ? -1.0 : 1.0;
  double r = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double d = p[i] / std::sqrt(np) - s * v[i] / std::sqrt(nv);
    r += d * d;
  }
  return r;
}

/// Grid point with the smallest projective residual over [a, b].
inline double brute_force_argmin(const ratlink::MotionPolynomial& c,
                                 const ratlink::DualQuaternion& p, double a, double b,
                                 std::size_t samples) {
  double best_t = a;
  double best = INFINITY;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples);
    const double r = projective_residual(c, p, t);
    if (r < best) {
      best = r;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace oracles
