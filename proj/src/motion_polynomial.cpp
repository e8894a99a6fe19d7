#include "ratlink/motion_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratlink/errors.hpp"

namespace ratlink {

double RealPolynomial::operator()(double t) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * t + *it;
  return r;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return RealPolynomial{};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return RealPolynomial{std::move(d)};
}

double RealPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double v : coeffs_) m = std::max(m, std::abs(v));
  return m;
}

DualQuaternion DQPolynomial::operator()(double t) const {
  DualQuaternion r;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r *= t;
    r += *it;
  }
  return r;
}

DQPolynomial DQPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return DQPolynomial{};
  std::vector<DualQuaternion> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return DQPolynomial{std::move(d)};
}

DQPolynomial DQPolynomial::conjugate() const {
  std::vector<DualQuaternion> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.conjugate());
  return DQPolynomial{std::move(out)};
}

DQPolynomial DQPolynomial::eps_conjugate() const {
  std::vector<DualQuaternion> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.eps_conjugate());
  return DQPolynomial{std::move(out)};
}

DQPolynomial DQPolynomial::reversed() const {
  return DQPolynomial{std::vector<DualQuaternion>(coeffs_.rbegin(), coeffs_.rend())};
}

double DQPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, max_abs(c));
  return m;
}

DQPolynomial operator*(const DQPolynomial& a, const DQPolynomial& b) {
  if (a.empty() || b.empty()) return DQPolynomial{};
  std::vector<DualQuaternion> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return DQPolynomial{std::move(out)};
}

DQPolynomial operator*(const DQPolynomial& a, const DualQuaternion& b) {
  std::vector<DualQuaternion> out;
  out.reserve(a.coeffs_.size());
  for (const auto& c : a.coeffs_) out.push_back(c * b);
  return DQPolynomial{std::move(out)};
}

Vec3 RationalPointPath::point(double t) const {
  const double w = x0(t);
  return {x1(t) / w, x2(t) / w, x3(t) / w};
}

Vec3 RationalPointPath::velocity(double t) const {
  const double w = x0(t);
  const double dw = x0.derivative()(t);
  const RealPolynomial* num[3] = {&x1, &x2, &x3};
  Vec3 v{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = (*num[i])(t);
    const double dx = num[i]->derivative()(t);
    v[i] = (dx * w - x * dw) / (w * w);
  }
  return v;
}

double study_defect(const DQPolynomial& p) {
  const DQPolynomial n = p * p.conjugate();
  double primal = 0.0;
  double other = 0.0;
  for (const auto& c : n.coeffs()) {
    primal = std::max(primal, std::abs(c[0]));
    for (std::size_t i = 1; i < 8; ++i) other = std::max(other, std::abs(c[i]));
  }
  if (primal == 0.0) return other == 0.0 ? 0.0 : INFINITY;
  return other / primal;
}

namespace {

void validate(const DQPolynomial& p, double tolerance, double& defect) {
  if (p.empty()) throw Error(ErrorKind::StudyViolation, "motion polynomial has no coefficients");
  if (max_abs(p.coeffs().back()) <= tol::kStructural) {
    throw Error(ErrorKind::StudyViolation, "leading coefficient of motion polynomial vanishes");
  }
  const DQPolynomial n = p * p.conjugate();
  double primal = 0.0;
  for (const auto& c : n.coeffs()) primal = std::max(primal, std::abs(c[0]));
  if (primal <= tol::kStructural) {
    throw Error(ErrorKind::StudyViolation, "norm polynomial C C* vanishes identically");
  }
  defect = study_defect(p);
  if (defect > tolerance) {
    std::ostringstream msg;
    msg << "C C* is not real: largest dual/vector coefficient is " << defect * primal
        << " against primal scale " << primal << " (relative " << defect << " > " << tolerance
        << ")";
    throw Error(ErrorKind::StudyViolation, msg.str());
  }
}

}  // namespace

MotionPolynomial::MotionPolynomial(std::vector<DualQuaternion> coeffs, double study_tolerance)
    : MotionPolynomial(DQPolynomial{std::move(coeffs)}, study_tolerance) {}

MotionPolynomial::MotionPolynomial(DQPolynomial poly, double study_tolerance)
    : poly_(std::move(poly)), study_tolerance_(study_tolerance) {
  validate(poly_, study_tolerance_, defect_);
}

MotionPolynomial MotionPolynomial::from_axes(std::span<const DualQuaternion> axes,
                                             double study_tolerance) {
  if (axes.empty()) throw Error(ErrorKind::StudyViolation, "at least one axis is required");
  DQPolynomial c{{DualQuaternion::identity()}};
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!is_line(axes[i], study_tolerance)) {
      std::ostringstream msg;
      msg << "axis " << i << " " << axes[i] << " is not a Pluecker line";
      throw Error(ErrorKind::StudyViolation, msg.str());
    }
    c = c * DQPolynomial{{-axes[i], DualQuaternion::identity()}};
  }
  return MotionPolynomial{std::move(c), study_tolerance};
}

DualQuaternion MotionPolynomial::evaluate(MotionParam t) const {
  if (t.is_infinite()) return poly_.coeffs().back();
  const double x = t.value();
  const DualQuaternion value = poly_(x);
  // Scale of |C(t)| if nothing cancelled.
  double bound = 0.0;
  double power = 1.0;
  for (const auto& c : poly_.coeffs()) {
    bound += max_abs(c) * power;
    power *= std::abs(x);
  }
  if (norm_pair(value).primal <= tol::kStudy * bound * bound) {
    std::ostringstream msg;
    msg << "C(" << x << ") C(" << x << ")* vanishes; pose is not a Study quaternion";
    throw Error(ErrorKind::OnBorderOfDomain, msg.str());
  }
  return value;
}

MotionPolynomial MotionPolynomial::reparameterize_reciprocal() const {
  return MotionPolynomial{poly_.reversed(), study_tolerance_};
}

RealPolynomial MotionPolynomial::norm_polynomial() const {
  const DQPolynomial n = poly_ * poly_.conjugate();
  std::vector<double> out;
  out.reserve(n.coeffs().size());
  for (const auto& c : n.coeffs()) out.push_back(c[0]);
  return RealPolynomial{std::move(out)};
}

RationalPointPath MotionPolynomial::point_path(const DualQuaternion& point) const {
  const DQPolynomial acted = (poly_.eps_conjugate() * point) * poly_.conjugate();
  double scale = 0.0;
  double rotation = 0.0;
  for (const auto& c : acted.coeffs()) {
    scale = std::max(scale, max_abs(c));
    for (std::size_t i = 1; i <= 4; ++i) rotation = std::max(rotation, std::abs(c[i]));
  }
  if (rotation > tol::kStudy * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "acted point polynomial has rotational part " << rotation;
    throw Error(ErrorKind::StudyViolation, msg.str());
  }
  std::vector<double> x[4];
  const std::size_t idx[4] = {0, 5, 6, 7};
  for (std::size_t k = 0; k < 4; ++k) {
    x[k].reserve(acted.coeffs().size());
    for (const auto& c : acted.coeffs()) x[k].push_back(c[idx[k]]);
  }
  return {RealPolynomial{std::move(x[0])}, RealPolynomial{std::move(x[1])},
          RealPolynomial{std::move(x[2])}, RealPolynomial{std::move(x[3])}};
}

}  // namespace ratlink
