#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <vector>

#include "ratlink/kinematics.hpp"
#include "ratlink/mechanism_io.hpp"

namespace fixtures {

using ratlink::DualQuaternion;

inline std::filesystem::path data_dir() { return RATLINK_DATA_DIR; }

// Revolute axes of the 6R example (first branch).
inline std::vector<DualQuaternion> sixr_axes() {
  return {{0, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 3, 0, 0, 0, 0, 1}, {0, 1, 1, 0, 0, 0, 0, -2}};
}

// Second branch, rounded to 3 decimals.
inline std::vector<DualQuaternion> sixr_second_branch() {
  return {{0, 1.8, 2.4, 0, 0, 0, 0, 0.8},
          {0, -0.723, 1.215, 0, 0, 0, 0, -0.492},
          {0, 0.923, 0.385, 0, 0, 0, 0, -1.308}};
}

// Expanded cubic: row = component p0..p7, column = power of t.
inline constexpr std::array<std::array<double, 4>, 8> kSixRCubic{{
    {0, -4, 0, 1},   // t³ − 4t
    {3, 0, -2, 0},   // 3 − 2t²
    {-3, 0, -4, 0},  // −4t² − 3
    {0, 1, 0, 0},    // t
    {-7, 0, 0, 0},   // −7
    {0, -7, 0, 0},   // −7t
    {0, 2, 0, 0},    // 2t
    {-1, 0, 1, 0},   // t² − 1
}};

// Pose at θ = π/3 rounded to 3 decimals.
inline const DualQuaternion kSixRPose{-1.732, -3, -15, 1.732, -7, -12.124, 3.464, 2};
// Pose at t = −1 (θ = 3π/2).
inline const DualQuaternion kSixREndPose{3, 1, -7, -1, -7, 7, -2, 0};

// Bennett poses, rounded to 3 decimals.
inline const DualQuaternion kBennettP1{1, -0.208, -0.033, -0.069, -0.006, -0.014, -0.045, -0.026};
inline const DualQuaternion kBennettP2{1, 0.233, -0.043, 0.078, -0.008, 0.030, 0.030, 0.035};
inline const DualQuaternion kShiftedToolHome{1, 0, 0, 0, 0, 0, 0.085, 0};

// Length of the tool origin path for t ∈ [−1, √3], from a 10⁶-interval
// trapezoid rule over a central-difference speed (independent numpy script,
// cross-checked against a dense C++ trapezoid in the tests).
inline constexpr double kSixRArcLength = 6.2846473072;

inline ratlink::Mechanism sixr_mechanism(DualQuaternion tool = DualQuaternion::identity()) {
  return ratlink::Mechanism{ratlink::MotionPolynomial::from_axes(sixr_axes()),
                            ratlink::DrivingAxis{{0, 1, 0, 0}}, tool};
}

inline ratlink::MechanismSpec bennett_spec() {
  return ratlink::load_mechanism_spec(data_dir() / "bennett.json");
}

inline ratlink::Mechanism bennett_mechanism() { return bennett_spec().build(); }

/// Random Plücker line with direction and point components in [−2, 2].
inline DualQuaternion random_line(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ratlink::Vec3 d{u(rng), u(rng), u(rng)};
  while (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] < 0.1) d = {u(rng), u(rng), u(rng)};
  return ratlink::line_from_point_direction(d, {u(rng), u(rng), u(rng)});
}

inline DualQuaternion random_dq(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DualQuaternion a;
  for (auto& v : a.c) v = u(rng);
  return a;
}

/// Random Study quaternion: product of a few random lines and a translation.
inline DualQuaternion random_study(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DualQuaternion h = ratlink::DualQuaternion::real(u(rng) + 2.0) + random_line(rng);
  return h * ratlink::make_translation({u(rng), u(rng), u(rng)});
}

inline double max_abs_diff(const DualQuaternion& a, const DualQuaternion& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 8; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm3(const ratlink::Vec3& a, const ratlink::Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace fixtures
