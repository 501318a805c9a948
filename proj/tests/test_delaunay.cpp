#include <doctest.h>

#include <cmath>

#include "bubbles/delaunay.hpp"
#include "bubbles/solve.hpp"

using namespace bubbles;

TEST_CASE("solveMonotone finds bracketed roots") {
  const double root = solveMonotone(
      [](double x) { return x * x * x - 2.0; }, 0.0, 2.0, 1e-14);
  CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(
      solveMonotone([](double x) { return x + 10.0; }, 0.0, 1.0, 1e-12),
      Error);
}

TEST_CASE("adaptive Simpson integrates smooth functions") {
  const double v = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("sphere branch reproduces the half circle") {
  // lambda = 2 selects the unit sphere; the profile from the equator is a
  // circle of radius 1 about a point on the axis.
  const double span = 0.999 * kPi / 2;
  DelaunayProfile p = generateDelaunayProfile(2.0, 0.0, -span, span);
  CHECK(p.kind == DelaunayKind::Sphere);
  for (const auto& s : p.samples) {
    const double radius_err = std::abs(std::hypot(s.radius, s.z) - 1.0);
    CHECK(radius_err < 1e-8);
  }
  CHECK(p.cmc_residual_max < 1e-8);
}

TEST_CASE("cylinder branch has constant radius 1/(2 lambda)") {
  DelaunayProfile p = generateDelaunayProfile(2.0, 1.0, -1.0, 1.0);
  CHECK(p.kind == DelaunayKind::Cylinder);
  for (const auto& s : p.samples) {
    CHECK(s.radius == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK(p.cmc_residual_max < 1e-8);
}

TEST_CASE("generic unduloid: CMC residual and period recovery") {
  const double lambda = 2.0, shape = 0.4;
  DelaunayProfile p = generateDelaunayProfile(lambda, shape, -3.0, 3.0);
  CHECK(p.kind == DelaunayKind::Unduloid);
  CHECK(p.cmc_residual_max < 1e-8);
  // period: arclength between consecutive bulges (psi crossing pi/2 going up)
  auto bulges = [&](const DelaunayProfile& prof) {
    std::vector<double> out;
    for (std::size_t i = 1; i < prof.samples.size(); ++i) {
      const double a = prof.samples[i - 1].psi - kPi / 2;
      const double b = prof.samples[i].psi - kPi / 2;
      if (a < 0 && b >= 0) {
        const double w = a / (a - b);
        out.push_back(prof.samples[i - 1].s +
                      w * (prof.samples[i].s - prof.samples[i - 1].s));
      }
    }
    return out;
  };
  const auto b1 = bulges(p);
  REQUIRE(b1.size() >= 2);
  const double period = b1[1] - b1[0];
  // re-integrate at half the sample spacing
  DelaunayProfile fine = generateDelaunayProfile(lambda, shape, -3.0, 3.0,
                                                 0.005 / lambda);
  const auto b2 = bulges(fine);
  REQUIRE(b2.size() >= 2);
  CHECK(std::abs((b2[1] - b2[0]) - period) < 1e-6);
}

TEST_CASE("nodoid bulge radius follows the conserved quantity") {
  const double lambda = 2.0, shape = -0.5;
  DelaunayProfile p = generateDelaunayProfile(lambda, shape, -0.5, 0.5);
  CHECK(p.kind == DelaunayKind::Nodoid);
  const double expected = (1.0 + std::sqrt(1.0 - shape)) / lambda;
  double rmax = 0;
  for (const auto& s : p.samples) rmax = std::max(rmax, s.radius);
  CHECK(rmax == doctest::Approx(expected).epsilon(1e-9));
  CHECK(p.cmc_residual_max < 1e-8);
}

TEST_CASE("pinch inside the span raises PinchOff") {
  // the sphere branch reaches the axis at arclength pi/lambda
  CHECK_THROWS_AS(generateDelaunayProfile(2.0, 0.0, -3.0, 3.0), PinchOff);
}

TEST_CASE("revolved volume of the sphere piece") {
  // unit sphere between psi = 60 and 120 degrees: the slab |z| <= 1/2,
  // volume 11 pi / 12
  DelaunayProfile p = generateDelaunayProfile(2.0, 0.0, -1.2, 1.2);
  const double s_lo = p.arclengthAtPsi(kPi / 3);
  const double v = revolvedVolume(p, s_lo, -s_lo);
  CHECK(v == doctest::Approx(11.0 * kPi / 12.0).epsilon(1e-8));
}

TEST_CASE("profile generation rejects bad arguments") {
  CHECK_THROWS_AS(generateDelaunayProfile(-1.0, 0.0, -1, 1), Error);
  CHECK_THROWS_AS(generateDelaunayProfile(2.0, 0.0, 0.5, 1.0), Error);
  CHECK_THROWS_AS(generateDelaunayProfile(2.0, 1.5, -1, 1), Error);
}
