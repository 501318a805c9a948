#ifndef BUBBLES_CATALOGUE_HPP
#define BUBBLES_CATALOGUE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bubbles/delaunay.hpp"
#include "bubbles/mesh.hpp"

namespace bubbles {

enum class ConfigKind {
  DisjointBalls,
  StandardDoubleBubble,
  BallPlusDoubleBubble,
  LinedUpTriple,
  StandardTriple,
};

std::string kindName(ConfigKind kind);
ConfigKind kindFromName(const std::string& name);

enum class LinedUpBranch { Auto, NonParallel, Parallel, PointContact };

std::string branchName(LinedUpBranch b);

struct Placement {
  // rigid motion applied to the finished cluster
  Vec3 translate = Vec3::Zero();
  Vec3 rotate_axis = Vec3::UnitZ();
  double rotate_deg = 0.0;
  // kind-specific knobs
  bool tangent = false;                         // disjoint balls
  std::optional<std::vector<Vec3>> centers;     // disjoint balls
  std::optional<Vec3> direction;                // ball + double bubble
  double gap = -1.0;                            // ball + double bubble (<0: default)
};

struct ConfigurationSpec {
  ConfigKind kind = ConfigKind::DisjointBalls;
  std::vector<double> volumes;
  double resolution = 0.05;
  std::uint64_t seed = 0;
  std::optional<Placement> placement;
  LinedUpBranch branch = LinedUpBranch::Auto;   // lined-up only
  std::optional<double> opening_deg;            // lined-up non-parallel
  double jitter_rel = 0.0;                      // perturbation, fraction of r
};

ConfigurationSpec parseConfigurationSpec(const nlohmann::json& j);
nlohmann::ordered_json configurationSpecToJson(const ConfigurationSpec& spec);

struct BuildReport {
  std::string kind;
  std::string branch;      // e.g. "flat_interface", "parallel_unduloid"
  double r = 0;            // principal sphere radius
  double lambda = 0;       // 2/r
  std::vector<double> target_volumes;
  std::vector<double> achieved_volumes;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  // lined-up middle cell parameters (zero unless applicable)
  double middle_lambda = 0;      // mean curvature of the middle surface
  double middle_shape = 0;       // Delaunay shape parameter of the profile
  double wedge_opening_deg = 0;  // dihedral between the separating planes
  nlohmann::ordered_json toJson() const;
};

// Sphere radius of a ball cut by a plane at distance r/2 from its center
// (the 120-degree contact condition) enclosing the given volume.
double solveDoubleBubbleRadius(double volume);

// Volume of that cut ball (slice integral of the cross sections).
double cutBallVolume(double r);

// Middle-cell volume of the lined-up triple for the spherical branches:
// a radius-r ball truncated by two planes at distance r/2.
double linedUpSphericalMiddleVolume(double r);

Cluster buildCluster(const ConfigurationSpec& spec, BuildReport* report = nullptr);

Cluster buildDisjointBalls(const ConfigurationSpec& spec, BuildReport* report = nullptr);
Cluster buildStandardDoubleBubble(const ConfigurationSpec& spec, BuildReport* report = nullptr);
Cluster buildBallPlusDoubleBubble(const ConfigurationSpec& spec, BuildReport* report = nullptr);
Cluster buildLinedUpTriple(const ConfigurationSpec& spec, BuildReport* report = nullptr);
Cluster buildStandardTriple(const ConfigurationSpec& spec, BuildReport* report = nullptr);

}  // namespace bubbles

#endif
