#include "ratlink/dual_quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "ratlink/errors.hpp"

namespace ratlink {

double max_abs(const DualQuaternion& a) {
  double m = 0.0;
  for (double v : a.c) m = std::max(m, std::abs(v));
  return m;
}

double euclidean_norm(const DualQuaternion& a) {
  double s = 0.0;
  for (double v : a.c) s += v * v;
  return std::sqrt(s);
}

double relative_study_defect(const DualQuaternion& h) {
  const auto n = norm_pair(h);
  double all = 0.0;
  for (double v : h.c) all += v * v;
  if (!(n.primal > tol::kStructural * all)) return std::numeric_limits<double>::infinity();
  return std::abs(n.dual) / n.primal;
}

bool is_study(const DualQuaternion& h, double tolerance) {
  return relative_study_defect(h) <= tolerance;
}

bool is_line(const DualQuaternion& l, double tolerance) {
  const double scale = std::max(1.0, max_abs(l));
  if (std::abs(l[0]) > tolerance * scale || std::abs(l[4]) > tolerance * scale) return false;
  const double dir2 = l[1] * l[1] + l[2] * l[2] + l[3] * l[3];
  if (dir2 <= tolerance * tolerance) return false;
  const double dot = l[1] * l[5] + l[2] * l[6] + l[3] * l[7];
  return std::abs(dot) <= tolerance * scale * scale;
}

bool is_point(const DualQuaternion& x) {
  return x[0] == 1.0 && x[1] == 0.0 && x[2] == 0.0 && x[3] == 0.0 && x[4] == 0.0;
}

DualQuaternion line_from_point_direction(const Vec3& p, const Vec3& q) {
  const double len = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  if (len <= tol::kStructural) {
    throw Error(ErrorKind::ZeroDirection, "line direction has zero length");
  }
  // −½(pq − qp) = −p × q = q × p for vector quaternions
  const Vec3 m{q[1] * p[2] - q[2] * p[1], q[2] * p[0] - q[0] * p[2], q[0] * p[1] - q[1] * p[0]};
  return {0, p[0], p[1], p[2], 0, m[0], m[1], m[2]};
}

DualQuaternion act_on_point(const DualQuaternion& h, const DualQuaternion& point) {
  const auto n = norm_pair(h);
  if (std::abs(n.primal) <= tol::kStudy) {
    std::ostringstream msg;
    msg << "hh* = " << n.primal << " does not define a displacement";
    throw Error(ErrorKind::DegenerateDisplacement, msg.str());
  }
  const DualQuaternion image = h.eps_conjugate() * point * h.conjugate();
  return {1, 0, 0, 0, 0, image[5] / n.primal, image[6] / n.primal, image[7] / n.primal};
}

Vec3 act_on_point(const DualQuaternion& h, const Vec3& point) {
  return point_coords(act_on_point(h, make_point(point)));
}

DualQuaternion normalize_unit(const DualQuaternion& a) {
  const double norm = euclidean_norm(a);
  if (max_abs(a) <= tol::kStructural) {
    throw Error(ErrorKind::ZeroElement, "cannot normalize the zero element");
  }
  double sign = 1.0;
  for (double v : a.c) {
    if (std::abs(v) > tol::kStructural * norm) {
      sign = v < 0 ? -1.0 : 1.0;
      break;
    }
  }
  DualQuaternion out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = sign * a[i] / norm;
  return out;
}

DualQuaternion normalize_canonical(const DualQuaternion& a) {
  if (std::abs(a[0]) > tol::kCanonical) {
    DualQuaternion out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = a[i] / a[0];
    return out;
  }
  return normalize_unit(a);
}

std::ostream& operator<<(std::ostream& os, const DualQuaternion& a) {
  os << '[';
  for (std::size_t i = 0; i < 8; ++i) {
    if (i) os << ", ";
    os << a[i];
  }
  return os << ']';
}

}  // namespace ratlink
