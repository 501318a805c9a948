#include <doctest.h>

#include <cmath>

#include "bubbles/catalogue.hpp"
#include "bubbles/classify.hpp"
#include "bubbles/meshing.hpp"

using namespace bubbles;

namespace {

Cluster build(ConfigKind kind, std::vector<double> volumes, double res,
              LinedUpBranch branch = LinedUpBranch::Auto) {
  ConfigurationSpec s;
  s.kind = kind;
  s.volumes = std::move(volumes);
  s.resolution = res;
  s.branch = branch;
  return buildCluster(s, nullptr);
}

}  // namespace

TEST_CASE("classifier round trip over the catalogue") {
  const double vstar = linedUpSphericalMiddleVolume(solveDoubleBubbleRadius(1.0));
  struct Row {
    Cluster cluster;
    Configuration expect;
    int expect_case;
  };
  std::vector<Row> rows;
  rows.push_back({build(ConfigKind::DisjointBalls, {1.0, 2.0, 0.7}, 0.07),
                  Configuration::DisjointBalls, 1});
  rows.push_back({build(ConfigKind::StandardDoubleBubble, {1.0, 1.0}, 0.05),
                  Configuration::StandardDoubleBubble, 2});
  rows.push_back({build(ConfigKind::BallPlusDoubleBubble, {1.0, 1.0, 0.8}, 0.05),
                  Configuration::BallPlusDoubleBubble, 2});
  rows.push_back({build(ConfigKind::LinedUpTriple, {1.0, vstar, 1.0}, 0.05,
                        LinedUpBranch::NonParallel),
                  Configuration::LinedUpTriple, 3});
  rows.push_back({build(ConfigKind::StandardTriple, {1.0, 1.0, 1.0}, 0.05),
                  Configuration::StandardTriple, 4});
  for (auto& row : rows) {
    const Classification cls = classify(row.cluster);
    CHECK(cls.configuration == row.expect);
    CHECK(cls.case_label == row.expect_case);
    CHECK(cls.failed_predicates.empty());
    CHECK(cls.angle_pass);
  }
}

TEST_CASE("case-configuration pairing is the theorem's bijection") {
  // every emitted configuration must sit in its own case
  const double vstar = linedUpSphericalMiddleVolume(solveDoubleBubbleRadius(1.0));
  const std::map<Configuration, int> pairing = {
      {Configuration::DisjointBalls, 1},
      {Configuration::BallPlusDoubleBubble, 2},
      {Configuration::LinedUpTriple, 3},
      {Configuration::StandardTriple, 4},
  };
  std::vector<Cluster> clusters;
  clusters.push_back(build(ConfigKind::DisjointBalls, {1.0, 0.6, 0.3}, 0.08));
  clusters.push_back(build(ConfigKind::BallPlusDoubleBubble, {1.0, 1.0, 0.5}, 0.06));
  clusters.push_back(build(ConfigKind::LinedUpTriple, {1.0, 1.2 * vstar, 1.0},
                           0.06, LinedUpBranch::Parallel));
  clusters.push_back(build(ConfigKind::StandardTriple, {0.8, 0.8, 0.8}, 0.06));
  for (auto& c : clusters) {
    const Classification cls = classify(c);
    REQUIRE(cls.configuration != Configuration::Unclassified);
    CHECK(pairing.at(cls.configuration) == cls.case_label);
  }
}

TEST_CASE("lined-up branches are annotated") {
  const double vstar = linedUpSphericalMiddleVolume(solveDoubleBubbleRadius(1.0));
  auto branchOf = [&](LinedUpBranch b, double vmid) {
    Cluster c = build(ConfigKind::LinedUpTriple, {1.0, vmid, 1.0}, 0.05, b);
    return classify(c).branch;
  };
  CHECK(branchOf(LinedUpBranch::NonParallel, vstar) == "non_parallel_sphere");
  CHECK(branchOf(LinedUpBranch::PointContact, vstar) == "point_contact");
  CHECK(branchOf(LinedUpBranch::Parallel, vstar) == "parallel_sphere");
  CHECK(branchOf(LinedUpBranch::Parallel, 1.3 * vstar) == "parallel_delaunay");
}

TEST_CASE("unclassified inputs report the failed predicates") {
  Cluster c = build(ConfigKind::StandardDoubleBubble, {1.0, 1.0}, 0.05);
  for (auto& v : c.mesh.vertices) v.z() *= 1.25;  // lobes are no longer spheres
  const Classification cls = classify(c);
  CHECK(cls.configuration == Configuration::Unclassified);
  CHECK(!cls.failed_predicates.empty());
}

TEST_CASE("classify rejects unsupported k and non-convex regions") {
  SUBCASE("k out of range") {
    Cluster c = build(ConfigKind::DisjointBalls, {1.0}, 0.2);
    c.k = 4;
    c.target_volumes = {1, 1, 1, 1};
    CHECK_THROWS_AS(classify(c), UnsupportedK);
  }
  SUBCASE("dented region") {
    Cluster c = build(ConfigKind::DisjointBalls, {1.0}, 0.1);
    c.mesh.vertices[0] *= 0.5;
    CHECK_THROWS_AS(classify(c), ConvexityViolation);
  }
}

TEST_CASE("angle sum witness") {
  CHECK(angleSumWitness(2 * kPi / 3, 2 * kPi / 3, 2 * kPi / 3));
  CHECK(angleSumWitness(kPi / 4, kPi / 4, 3 * kPi / 2));
  // three wedges strictly below pi/3 cannot close up to 2 pi
  const double a = kPi / 3 - 0.01;
  CHECK(!angleSumWitness(a, a, a));
  CHECK(!angleSumWitness(kPi, kPi / 2, kPi / 4));
}

TEST_CASE("sphere and plane fits") {
  SUBCASE("sphere fit recovers a noisy sphere") {
    std::vector<Vec3> pts;
    SplitMix64 rng(5);
    const Vec3 center(1, -2, 0.5);
    for (int i = 0; i < 400; ++i) {
      const double z = 2 * rng.uniform() - 1;
      const double phi = 2 * kPi * rng.uniform();
      const double s = std::sqrt(1 - z * z);
      pts.push_back(center +
                    3.0 * Vec3(s * std::cos(phi), s * std::sin(phi), z));
    }
    const SphereFit fit = fitSphere(pts);
    CHECK((fit.center - center).norm() < 1e-9);
    CHECK(fit.radius == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.rms < 1e-9);
  }
  SUBCASE("plane fit recovers a tilted plane") {
    std::vector<Vec3> pts;
    SplitMix64 rng(6);
    const Vec3 n = Vec3(1, 2, -1).normalized();
    Vec3 e1, e2;
    basisFromAxis(n, e1, e2);
    for (int i = 0; i < 200; ++i) {
      pts.push_back(0.3 * n + (rng.uniform() - 0.5) * e1 +
                    (rng.uniform() - 0.5) * e2);
    }
    const PlaneFit fit = fitPlane(pts);
    CHECK(std::abs(std::abs(fit.normal.dot(n)) - 1.0) < 1e-12);
    CHECK(fit.rms < 1e-12);
  }
}

TEST_CASE("tangency tie-breaking") {
  // tangent balls flag as tangent; separated ones do not
  ConfigurationSpec s;
  s.kind = ConfigKind::DisjointBalls;
  s.volumes = {4 * kPi / 3, 4 * kPi / 3};
  s.resolution = 0.1;
  Placement p;
  p.tangent = true;
  s.placement = p;
  Cluster c = buildCluster(s, nullptr);
  Classification cls = classify(c);
  CHECK(cls.tangency.at({1, 2}));
  s.placement.reset();
  Cluster c2 = buildCluster(s, nullptr);
  Classification cls2 = classify(c2);
  CHECK(!cls2.tangency.at({1, 2}));
}
