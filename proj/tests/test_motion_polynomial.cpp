#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "ratlink/motion_polynomial.hpp"

using namespace ratlink;
using fixtures::max_abs_diff;

namespace {

double poly_component(const DQPolynomial& p, std::size_t component, std::size_t power) {
  return power < p.coeffs().size() ? p.coeffs()[power][component] : 0.0;
}

}  // namespace

TEST_CASE("product of the three axes expands to the integer cubic") {
  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  REQUIRE(c.degree() == 3);
  for (std::size_t comp = 0; comp < 8; ++comp)
    for (std::size_t pw = 0; pw < 4; ++pw)
      CHECK(poly_component(c.poly(), comp, pw) == fixtures::kSixRCubic[comp][pw]);
  CHECK(c.study_defect() == 0.0);
}

TEST_CASE("second factorization gives the same motion up to rounding") {
  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  const auto k = MotionPolynomial::from_axes(fixtures::sixr_second_branch(), 1e-2);
  REQUIRE(k.degree() == 3);
  // Both sides scaled so the leading coefficient starts with 1.
  const double sc = c.coeffs().back()[0];
  const double sk = k.coeffs().back()[0];
  for (std::size_t pw = 0; pw < 4; ++pw)
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(std::abs(c.coeffs()[pw][i] / sc - k.coeffs()[pw][i] / sk) <= 2e-3);
}

TEST_CASE("single axis gives a linear motion") {
  const DualQuaternion i{0, 1, 0, 0, 0, 0, 0, 0};
  const auto c = MotionPolynomial::from_axes(std::vector{i});
  REQUIRE(c.degree() == 1);
  CHECK(c.coeffs()[0] == -i);
  CHECK(c.coeffs()[1] == DualQuaternion::identity());
}

TEST_CASE("axis order matters") {
  auto axes = fixtures::sixr_axes();
  const auto forward = MotionPolynomial::from_axes(axes);
  std::reverse(axes.begin(), axes.end());
  const auto backward = MotionPolynomial::from_axes(axes);
  double diff = 0.0;
  for (std::size_t pw = 0; pw < 4; ++pw)
    diff = std::max(diff, max_abs_diff(forward.coeffs()[pw], backward.coeffs()[pw]));
  CHECK(diff > 0.1);
}

TEST_CASE("invalid axes and non-motions are rejected") {
  const DualQuaternion not_a_line{0, 0, 0, 3, 0, 0, 0, 1};
  CHECK_THROWS_AS(MotionPolynomial::from_axes(std::vector{not_a_line}), Error);
  try {
    MotionPolynomial::from_axes(std::vector{not_a_line});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StudyViolation);
  }
  // 1 + ε t is not a motion
  try {
    MotionPolynomial{std::vector<DualQuaternion>{{1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0}}};
    FAIL("expected StudyViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StudyViolation);
  }
}

TEST_CASE("random line products satisfy the Study condition") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 50; ++n) {
    const int count = 1 + n % 5;
    std::vector<DualQuaternion> axes;
    for (int i = 0; i < count; ++i) axes.push_back(fixtures::random_line(rng));
    const auto c = MotionPolynomial::from_axes(axes);
    CHECK(c.degree() == count);
    CHECK(c.study_defect() <= 1e-9);
    CHECK(c.derivative().degree() == count - 1);
  }
}

TEST_CASE("evaluation") {
  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  const auto v = c.evaluate(1.732);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(v[i] - fixtures::kSixRPose[i]) <= 1e-3);
  CHECK(c.evaluate(MotionParam::infinity()) == DualQuaternion::identity());
  CHECK(max_abs_diff(c.evaluate(-1.0), fixtures::kSixREndPose) == 0.0);

  const DualQuaternion k{2, 0, 1, 0, 0, 0, 0, 0};
  const MotionPolynomial constant{std::vector{k}};
  CHECK(constant.degree() == 0);
  CHECK(constant.evaluate(17.0) == k);
  CHECK(constant.evaluate(MotionParam::infinity()) == k);
}

TEST_CASE("evaluation on the border of the domain") {
  // t + 1 vanishes at t = −1
  const MotionPolynomial c{std::vector<DualQuaternion>{DualQuaternion::identity(),
                                                       DualQuaternion::identity()}};
  try {
    c.evaluate(-1.0);
    FAIL("expected OnBorderOfDomain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OnBorderOfDomain);
  }
}

TEST_CASE("formal derivative") {
  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  const auto d = c.derivative();
  REQUIRE(d.degree() == 2);
  CHECK(poly_component(d, 0, 0) == -4);
  CHECK(poly_component(d, 0, 1) == 0);
  CHECK(poly_component(d, 0, 2) == 3);
  CHECK(poly_component(d, 7, 0) == 0);
  CHECK(poly_component(d, 7, 1) == 2);

  const MotionPolynomial constant{std::vector{DualQuaternion::identity()}};
  CHECK(constant.derivative().empty());

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2, 2);
  const double h = 1e-6;
  for (int n = 0; n < 5; ++n) {
    const double t = u(rng);
    const auto fd = (c.poly()(t + h) - c.poly()(t - h)) * (1.0 / (2 * h));
    const auto exact = d(t);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(std::abs(fd[i] - exact[i]) <= 1e-6 * std::max(1.0, std::abs(exact[i])));
  }
}

TEST_CASE("reciprocal reparameterization") {
  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  const auto r = c.reparameterize_reciprocal();
  CHECK(r.reparameterize_reciprocal().coeffs() == c.coeffs());
  CHECK(r.evaluate(0.0) == DualQuaternion::identity());
  CHECK(max_abs_diff(normalize_canonical(c.evaluate(2.0)), normalize_canonical(r.evaluate(0.5))) <=
        1e-12);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  for (int n = 0; n < 100; ++n) {
    const double t = (n % 2 ? -1 : 1) * u(rng);
    CHECK(max_abs_diff(normalize_canonical(c.evaluate(t)), normalize_canonical(r.evaluate(1 / t))) <=
          1e-9);
  }
}

TEST_CASE("point path") {
  const MotionPolynomial identity{std::vector{DualQuaternion::identity()}};
  const auto trivial = identity.point_path(Vec3{0, 0, 0});
  CHECK(trivial.x0(0.3) == 1.0);
  CHECK(trivial.x1(0.3) == 0.0);
  CHECK(trivial.x2(0.3) == 0.0);
  CHECK(trivial.x3(0.3) == 0.0);

  const auto c = MotionPolynomial::from_axes(fixtures::sixr_axes());
  const auto path = c.point_path(Vec3{0, 0, 0});
  CHECK(path.x0(1.732) == doctest::Approx(norm_pair(c.evaluate(1.732)).primal).epsilon(1e-14));
  CHECK(path.x0.coeffs() == c.norm_polynomial().coeffs());

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int n = 0; n < 5; ++n) {
    const Vec3 tool{u(rng), u(rng), u(rng)};
    const auto p = c.point_path(tool);
    for (int k = 0; k < 5; ++k) {
      const double t = u(rng);
      CHECK(fixtures::norm3(p.point(t), act_on_point(c.evaluate(t), tool)) <= 1e-9);
      // velocity against central differences
      const double h = 1e-6;
      const auto a = p.point(t + h);
      const auto b = p.point(t - h);
      const auto v = p.velocity(t);
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs((a[i] - b[i]) / (2 * h) - v[i]) <= 1e-5 * std::max(1.0, std::abs(v[i])));
    }
  }
}

TEST_CASE("point path has no rotational part") {
  std::mt19937_64 rng(15);
  for (int n = 0; n < 20; ++n) {
    std::vector<DualQuaternion> axes;
    for (int i = 0; i < 3; ++i) axes.push_back(fixtures::random_line(rng));
    const auto c = MotionPolynomial::from_axes(axes);
    const auto x = make_point({0.1 * n, -0.2, 0.7});
    const auto acted = c.poly().eps_conjugate() * x;
    const auto full = DQPolynomial(acted) * c.poly().conjugate();
    double scale = 0.0, rot = 0.0;
    for (const auto& k : full.coeffs()) {
      scale = std::max(scale, max_abs(k));
      rot = std::max({rot, std::abs(k[1]), std::abs(k[2]), std::abs(k[3]), std::abs(k[4])});
    }
    CHECK(rot <= 1e-12 * scale);
    CHECK_NOTHROW(c.point_path(x));
  }
}

TEST_CASE("real polynomial helpers") {
  const RealPolynomial p{{1, -2, 3}};
  CHECK(p(2.0) == 9.0);
  CHECK(p.derivative().coeffs() == std::vector<double>{-2, 6});
  CHECK(p.max_abs_coeff() == 3.0);
  CHECK(RealPolynomial{}(1.0) == 0.0);
}
