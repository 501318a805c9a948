#ifndef BUBBLES_VARIATION_HPP
#define BUBBLES_VARIATION_HPP

#include <map>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bubbles/mesh.hpp"

namespace bubbles {

// Per-vertex 3-vectors; zero on vertices not incident to the relevant faces.
using GradientField = std::vector<Vec3>;

double fieldNorm(const GradientField& g);
double fieldDot(const GradientField& a, const GradientField& b);

// Exact derivative of total surface area with respect to vertex positions.
// Throws DegenerateTriangle (zero area) with the face index.
GradientField areaGradient(const LabeledMesh& mesh);

// Exact derivative of computeVolume(region); polynomial in the vertices.
GradientField volumeGradient(const LabeledMesh& mesh, int region);

struct InterfaceStats {
  double mean_H = 0;
  double stddev_H = 0;
  double area = 0;
  int samples = 0;  // interior vertices used
};

struct JunctionPairAngles {
  RegionPair patch_a, patch_b;
  double median_deg = 0, min_deg = 0, max_deg = 0;
};

struct JunctionAngleStats {
  std::size_t edges = 0;
  bool is_loop = false;
  std::vector<JunctionPairAngles> pairs;
  double worstDeviationFrom(double target_deg) const;
};

struct VariationReport {
  std::vector<double> lambdas;
  double residual_abs = 0;
  double residual_rel = 0;
  bool rank_deficient = false;
  // Keyed by interface label. Mean curvature is signed with the normal
  // oriented lo->hi, except for exterior patches {0, i} where it is taken
  // outward with respect to region i (a round bubble reports +2/r).
  std::map<std::pair<int, int>, InterfaceStats> interfaces;
  std::vector<JunctionAngleStats> junctions;
  nlohmann::ordered_json toJson() const;
};

// Least-squares fit of the Lagrange multipliers: minimizes
// |G_A - sum_i lambda_i G_Vi| over the stacked per-vertex gradients.
VariationReport fitMultipliers(const Cluster& cluster);

// Pairwise dihedral angles between the three patches along a junction
// curve, from patch normals extrapolated to the edge over two rings.
JunctionAngleStats junctionAngles(const Cluster& cluster,
                                  const JunctionCurve& curve);

struct YConeResult {
  bool stationary = false;
  double defect = 0;
};

// Defect of the Y-cone balance v + v1 + v2 = 0, minimized over the sign
// flips that fix the overall orientation.
YConeResult yConeStationarity(const Vec3& v, const Vec3& v1, const Vec3& v2);

struct TangentCone {
  std::vector<Vec3> generators;       // unit edge directions at the vertex
  bool half_space = false;            // generators flat within tolerance
  double flat_deviation_deg = 0;      // worst angle off the fitted plane
  std::optional<double> wedge_opening_deg;  // when two patches span a wedge
};

// Polyhedral tangent cone of a convex region at one of its vertices.
// Throws NonConvexInput when the region fails the supporting-plane check.
TangentCone tangentConeAt(const LabeledMesh& mesh, int region, int vertex,
                          double flat_tol_deg = 2.0);

struct HKResult {
  double lhs = 0;      // |C|
  double rhs = 0;      // (n-1)/n * sum area/H, n = 3
  double gap_rel = 0;  // (rhs - lhs)/lhs; ~0 certifies a ball
  double excluded_area_rel = 0;
};

// Heintze-Karcher inequality check for one convex region.
HKResult heintzeKarcherCheck(const LabeledMesh& mesh, int region);

// Discrete mean curvature per vertex of one region's boundary, oriented
// outward, after `smoothing_passes` umbrella averages.
std::vector<double> regionVertexCurvature(const LabeledMesh& mesh, int region,
                                          int smoothing_passes = 2);

}  // namespace bubbles

#endif
