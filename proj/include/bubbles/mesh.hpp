#ifndef BUBBLES_MESH_HPP
#define BUBBLES_MESH_HPP

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bubbles/types.hpp"

namespace bubbles {

// Unordered region pair carried by every face. Region 0 is the exterior.
// Stored with lo < hi; the face normal (right-hand rule on the vertex
// triple) points from region `lo` into region `hi`.
struct RegionPair {
  int lo = 0;
  int hi = 0;
  RegionPair() = default;
  RegionPair(int a, int b) : lo(a < b ? a : b), hi(a < b ? b : a) {}
  bool contains(int r) const { return r == lo || r == hi; }
  // +1 when the stored normal is outward for `r`, -1 when inward.
  int orientationSign(int r) const { return r == lo ? +1 : -1; }
  bool operator==(const RegionPair& o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const RegionPair& o) const {
    return lo != o.lo ? lo < o.lo : hi < o.hi;
  }
};

// Triangle mesh whose faces separate labeled regions. Interfaces are stored
// once; non-manifold edges (valence 3) are triple junctions.
struct LabeledMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<RegionPair> labels;

  int addVertex(const Vec3& p) {
    vertices.push_back(p);
    return static_cast<int>(vertices.size()) - 1;
  }
  void addFace(int a, int b, int c, RegionPair label) {
    faces.push_back({a, b, c});
    labels.push_back(label);
  }
  std::size_t faceCount() const { return faces.size(); }
  std::size_t vertexCount() const { return vertices.size(); }

  Vec3 faceNormal(std::size_t f) const;    // unit; undefined for degenerate
  Vec3 faceAreaVector(std::size_t f) const;  // normal scaled by area
  double faceArea(std::size_t f) const;
  Vec3 faceCentroid(std::size_t f) const;

  // Largest region index present in the labels.
  int regionCount() const;

  void translate(const Vec3& t);
  void scale(double s);
  void rotate(const Mat3& R);
};

// Undirected edge key (lo index, hi index).
struct EdgeKey {
  int a, b;
  EdgeKey(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};
struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.a)) << 32) |
        static_cast<std::uint32_t>(e.b));
  }
};

using EdgeIncidence =
    std::unordered_map<EdgeKey, std::vector<int>, EdgeKeyHash>;

EdgeIncidence buildEdgeIncidence(const LabeledMesh& mesh);

// Chain of valence-3 edges with a uniform set of incident interface labels.
struct JunctionCurve {
  std::vector<int> vertices;            // ordered; closed when is_loop
  std::vector<RegionPair> labels;       // the three incident interface labels
  bool is_loop = false;
  std::size_t edgeCount() const {
    return vertices.empty() ? 0 : vertices.size() - (is_loop ? 0 : 1);
  }
};

// Deterministic pairwise summation (fixed reduction order).
double pairwiseSum(std::span<const double> values);

// Enclosed volume of a region via the divergence theorem. Exact for
// polyhedra. Throws OpenSurface / OrientationError when the region's
// boundary is not a closed consistently oriented surface.
double computeVolume(const LabeledMesh& mesh, int region);

// As above but without the closedness/orientation precheck (hot paths).
double computeVolumeUnchecked(const LabeledMesh& mesh, int region);

double totalArea(const LabeledMesh& mesh);
double computeInterfaceArea(const LabeledMesh& mesh, RegionPair pair);

// Mesh invariants: labels within range, edge valence in {2,3}, every
// region boundary closed and consistently oriented, no duplicate oriented
// triples. Throws the specific error; validate() returns normally on success.
void validateMesh(const LabeledMesh& mesh);
bool tryValidateMesh(const LabeledMesh& mesh, std::string* why);

std::vector<JunctionCurve> extractJunctionCurves(const LabeledMesh& mesh);

// Merge region `from` into region `to`: interface faces between them are
// dropped, other labels renamed. Used for volume-additivity checks.
LabeledMesh mergeRegions(const LabeledMesh& mesh, int from, int to);

struct InteractionGraph {
  int k = 0;
  std::vector<double> pair_areas;  // (k+1)x(k+1), row-major, symmetric
  double threshold = 0.0;
  double area(int i, int j) const { return pair_areas[i * (k + 1) + j]; }
  bool edge(int i, int j) const {
    return i != j && i >= 1 && j >= 1 && area(i, j) > threshold;
  }
  int edgeCount() const;
  int degree(int i) const;
};

struct Cluster;

InteractionGraph buildInteractionGraph(const Cluster& cluster, double threshold);
InteractionGraph buildInteractionGraph(const LabeledMesh& mesh, double threshold);

struct Cluster {
  int k = 0;
  std::vector<double> target_volumes;  // length k, positive
  LabeledMesh mesh;
  ToleranceProfile tolerances;
};

// All vertices of `region` lie inside every supporting half-space of its
// boundary, within slack rel_tol * diameter.
bool isConvexRegion(const LabeledMesh& mesh, int region, double rel_tol);

// Uniform displacement of every vertex, components in [-amplitude, amplitude].
// Deterministic across platforms for a fixed seed.
void jitterMesh(LabeledMesh& mesh, double amplitude, std::uint64_t seed);

}  // namespace bubbles

#endif
