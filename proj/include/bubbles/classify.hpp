#ifndef BUBBLES_CLASSIFY_HPP
#define BUBBLES_CLASSIFY_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bubbles/mesh.hpp"

namespace bubbles {

enum class Configuration {
  DisjointBalls,
  StandardDoubleBubble,
  BallPlusDoubleBubble,
  LinedUpTriple,
  StandardTriple,
  Unclassified,
};

std::string configurationName(Configuration c);

struct SphereFit {
  Vec3 center = Vec3::Zero();
  double radius = 0;
  double rms = 0;  // geometric residual
  double rmsRel() const { return radius > 0 ? rms / radius : 0; }
};

struct PlaneFit {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  double rms = 0;
};

SphereFit fitSphere(const std::vector<Vec3>& points);
PlaneFit fitPlane(const std::vector<Vec3>& points);

struct Classification {
  int k = 0;
  int case_label = 0;  // 1..4 for k=3, 1..2 for k=2, 1 for k=1
  Configuration configuration = Configuration::Unclassified;
  std::string branch;  // lined-up annotation
  std::map<std::pair<int, int>, double> fit_rms_rel;  // per labeled patch
  std::vector<double> lambdas;
  bool angle_pass = false;
  std::map<std::pair<int, int>, bool> tangency;
  std::vector<std::string> failed_predicates;
  nlohmann::ordered_json toJson() const;
};

// Case analysis over the interaction graph plus shape fits, junction-angle
// statistics and the equal-multiplier law. Emits Unclassified with the
// failed predicate list when a check misses its tolerance.
Classification classify(const Cluster& cluster);

// True iff the three wedge angles sum to 2*pi (within 1e-9) and at least
// one of them reaches pi/3; a decomposition failing this cannot bound a
// stationary cluster around a line.
bool angleSumWitness(double a1, double a2, double a3);

// Smallest distance between the boundary vertices of two regions.
double regionSurfaceDistance(const LabeledMesh& mesh, int region_a, int region_b);

}  // namespace bubbles

#endif
