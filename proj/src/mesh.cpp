#include "bubbles/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "bubbles/rng.hpp"

namespace bubbles {

ToleranceProfile toleranceProfile(const std::string& name) {
  ToleranceProfile p;
  p.name = name;
  if (name == "default") {
    return p;
  }
  if (name == "strict") {
    p.angle_deg = 0.5;
    p.multiplier_rel = 0.01;
    p.residual_rel = 0.01;
    p.volume_rel = 0.002;
    p.fit_rms_rel = 0.002;
    return p;
  }
  if (name == "coarse") {
    p.angle_deg = 2.0;
    p.multiplier_rel = 0.05;
    p.residual_rel = 0.05;
    p.volume_rel = 0.02;
    p.fit_rms_rel = 0.02;
    return p;
  }
  throw Error("unknown tolerance profile: " + name);
}

Vec3 LabeledMesh::faceAreaVector(std::size_t f) const {
  const auto& t = faces[f];
  const Vec3& p0 = vertices[t[0]];
  const Vec3& p1 = vertices[t[1]];
  const Vec3& p2 = vertices[t[2]];
  return 0.5 * (p1 - p0).cross(p2 - p0);
}

Vec3 LabeledMesh::faceNormal(std::size_t f) const {
  Vec3 n = faceAreaVector(f);
  double len = n.norm();
  return len > 0 ? Vec3(n / len) : Vec3(0, 0, 0);
}

double LabeledMesh::faceArea(std::size_t f) const {
  return faceAreaVector(f).norm();
}

Vec3 LabeledMesh::faceCentroid(std::size_t f) const {
  const auto& t = faces[f];
  return (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]) / 3.0;
}

int LabeledMesh::regionCount() const {
  int k = 0;
  for (const auto& l : labels) k = std::max(k, l.hi);
  return k;
}

void LabeledMesh::translate(const Vec3& t) {
  for (auto& v : vertices) v += t;
}

void LabeledMesh::scale(double s) {
  for (auto& v : vertices) v *= s;
}

void LabeledMesh::rotate(const Mat3& R) {
  for (auto& v : vertices) v = R * v;
}

EdgeIncidence buildEdgeIncidence(const LabeledMesh& mesh) {
  EdgeIncidence inc;
  inc.reserve(mesh.faces.size() * 2);
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    const auto& t = mesh.faces[f];
    for (int e = 0; e < 3; ++e) {
      inc[EdgeKey(t[e], t[(e + 1) % 3])].push_back(f);
    }
  }
  return inc;
}

double pairwiseSum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwiseSum(values.subspan(0, half)) + pairwiseSum(values.subspan(half));
}

namespace {

// Collect the faces bounding `region` and verify they form a closed surface
// oriented consistently outward (after the per-label sign correction).
std::vector<std::pair<int, int>> regionBoundary(const LabeledMesh& mesh,
                                                int region, bool check) {
  std::vector<std::pair<int, int>> out;  // (face, sign)
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    if (mesh.labels[f].contains(region)) {
      out.emplace_back(f, mesh.labels[f].orientationSign(region));
    }
  }
  if (!check) return out;
  if (out.empty()) {
    throw OpenSurface("region " + std::to_string(region) + " has no faces");
  }
  // Each directed edge (after orientation correction) must occur exactly
  // once, with its reverse also present.
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(out.size() * 3);
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  for (auto [f, sign] : out) {
    auto t = mesh.faces[f];
    if (sign < 0) std::swap(t[1], t[2]);
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (++directed[key(a, b)] > 1) {
        throw OrientationError("region " + std::to_string(region) +
                               ": duplicated directed edge " +
                               std::to_string(a) + "->" + std::to_string(b));
      }
    }
  }
  for (const auto& [k, cnt] : directed) {
    int a = static_cast<int>(k >> 32);
    int b = static_cast<int>(k & 0xffffffffULL);
    auto rev = directed.find(key(b, a));
    if (rev == directed.end()) {
      throw OpenSurface("region " + std::to_string(region) +
                        ": boundary edge " + std::to_string(a) + "-" +
                        std::to_string(b) + " is unmatched");
    }
  }
  return out;
}

double volumeOfBoundary(const LabeledMesh& mesh,
                        const std::vector<std::pair<int, int>>& boundary) {
  std::vector<double> terms;
  terms.reserve(boundary.size());
  for (auto [f, sign] : boundary) {
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    terms.push_back(sign * p0.dot(p1.cross(p2)) / 6.0);
  }
  return pairwiseSum(terms);
}

}  // namespace

double computeVolume(const LabeledMesh& mesh, int region) {
  return volumeOfBoundary(mesh, regionBoundary(mesh, region, true));
}

double computeVolumeUnchecked(const LabeledMesh& mesh, int region) {
  return volumeOfBoundary(mesh, regionBoundary(mesh, region, false));
}

double totalArea(const LabeledMesh& mesh) {
  std::vector<double> areas(mesh.faceCount());
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) areas[f] = mesh.faceArea(f);
  return pairwiseSum(areas);
}

double computeInterfaceArea(const LabeledMesh& mesh, RegionPair pair) {
  std::vector<double> areas;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (mesh.labels[f] == pair) areas.push_back(mesh.faceArea(f));
  }
  return pairwiseSum(areas);
}

bool tryValidateMesh(const LabeledMesh& mesh, std::string* why) {
  try {
    validateMesh(mesh);
    return true;
  } catch (const Error& e) {
    if (why) *why = e.what();
    return false;
  }
}

void validateMesh(const LabeledMesh& mesh) {
  if (mesh.faces.size() != mesh.labels.size()) {
    throw Error("face/label count mismatch");
  }
  const int nv = static_cast<int>(mesh.vertices.size());
  std::set<std::array<int, 3>> oriented;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& t = mesh.faces[f];
    for (int i = 0; i < 3; ++i) {
      if (t[i] < 0 || t[i] >= nv) throw Error("face vertex index out of range");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw DegenerateTriangle("face " + std::to_string(f) +
                               " has repeated vertices");
    }
    const auto& l = mesh.labels[f];
    if (l.lo < 0 || l.lo >= l.hi) {
      throw Error("face " + std::to_string(f) + " has invalid label");
    }
    // Canonical rotation of the oriented triple (smallest index first).
    std::array<int, 3> c = t;
    int m = std::min({c[0], c[1], c[2]});
    while (c[0] != m) c = {c[1], c[2], c[0]};
    if (!oriented.insert(c).second) {
      throw Error("duplicate oriented face triple at face " + std::to_string(f));
    }
  }
  EdgeIncidence inc = buildEdgeIncidence(mesh);
  for (const auto& [e, fs] : inc) {
    if (fs.size() != 2 && fs.size() != 3) {
      throw InvalidValence("edge " + std::to_string(e.a) + "-" +
                           std::to_string(e.b) + " has valence " +
                           std::to_string(fs.size()));
    }
  }
  const int k = mesh.regionCount();
  for (int r = 1; r <= k; ++r) regionBoundary(mesh, r, true);
}

std::vector<JunctionCurve> extractJunctionCurves(const LabeledMesh& mesh) {
  EdgeIncidence inc = buildEdgeIncidence(mesh);
  using E = std::pair<int, int>;
  std::map<E, std::vector<RegionPair>> jedges;
  for (const auto& [e, fs] : inc) {
    if (fs.size() > 3) {
      throw InvalidValence("edge " + std::to_string(e.a) + "-" +
                           std::to_string(e.b) + " has valence " +
                           std::to_string(fs.size()));
    }
    if (fs.size() == 3) {
      std::vector<RegionPair> ls;
      for (int f : fs) ls.push_back(mesh.labels[f]);
      std::sort(ls.begin(), ls.end());
      jedges[{e.a, e.b}] = std::move(ls);
    }
  }
  std::map<int, std::vector<E>> at_vertex;
  for (const auto& [e, ls] : jedges) {
    at_vertex[e.first].push_back(e);
    at_vertex[e.second].push_back(e);
  }
  // Chains break where the junction degree is not 2 or the label set changes.
  auto is_break = [&](int v) {
    const auto& around = at_vertex.at(v);
    if (around.size() != 2) return true;
    return jedges.at(around[0]) != jedges.at(around[1]);
  };
  auto other = [](const E& e, int v) { return e.first == v ? e.second : e.first; };
  std::set<E> used;
  std::vector<JunctionCurve> curves;

  auto walk = [&](int start_vertex, E first) {
    JunctionCurve curve;
    curve.labels = jedges.at(first);
    curve.vertices.push_back(start_vertex);
    E cur = first;
    int at = other(cur, start_vertex);
    used.insert(cur);
    curve.vertices.push_back(at);
    while (!is_break(at)) {
      const auto& around = at_vertex.at(at);
      E nxt = (around[0] == cur) ? around[1] : around[0];
      if (used.count(nxt)) break;  // closed the loop
      used.insert(nxt);
      cur = nxt;
      at = other(cur, at);
      curve.vertices.push_back(at);
    }
    return curve;
  };

  // Open chains start at break vertices.
  for (const auto& [v, around] : at_vertex) {
    if (!is_break(v)) continue;
    for (const E& e : around) {
      if (used.count(e)) continue;
      curves.push_back(walk(v, e));
    }
  }
  // Remaining edges belong to pure loops.
  for (const auto& [e, ls] : jedges) {
    if (used.count(e)) continue;
    JunctionCurve curve = walk(e.first, e);
    // The walk returns to the start vertex; drop the duplicate and flag.
    if (curve.vertices.size() > 1 &&
        curve.vertices.front() == curve.vertices.back()) {
      curve.vertices.pop_back();
    }
    curve.is_loop = true;
    curves.push_back(std::move(curve));
  }
  return curves;
}

LabeledMesh mergeRegions(const LabeledMesh& mesh, int from, int to) {
  LabeledMesh out;
  out.vertices = mesh.vertices;
  auto rename = [&](int r) { return r == from ? to : r; };
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& l = mesh.labels[f];
    int a = rename(l.lo), b = rename(l.hi);
    if (a == b) continue;  // interior interface disappears
    RegionPair nl(a, b);
    auto t = mesh.faces[f];
    // Keep the normal pointing lo->hi after renaming.
    if (a > b) std::swap(t[1], t[2]);
    out.faces.push_back(t);
    out.labels.push_back(nl);
  }
  return out;
}

int InteractionGraph::edgeCount() const {
  int n = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (edge(i, j)) ++n;
  return n;
}

int InteractionGraph::degree(int i) const {
  int n = 0;
  for (int j = 1; j <= k; ++j)
    if (edge(i, j)) ++n;
  return n;
}

InteractionGraph buildInteractionGraph(const LabeledMesh& mesh,
                                       double threshold) {
  InteractionGraph g;
  g.k = mesh.regionCount();
  g.threshold = threshold;
  g.pair_areas.assign((g.k + 1) * (g.k + 1), 0.0);
  for (int i = 1; i <= g.k; ++i) {
    for (int j = i + 1; j <= g.k; ++j) {
      double a = computeInterfaceArea(mesh, RegionPair(i, j));
      g.pair_areas[i * (g.k + 1) + j] = a;
      g.pair_areas[j * (g.k + 1) + i] = a;
    }
  }
  return g;
}

InteractionGraph buildInteractionGraph(const Cluster& cluster,
                                       double threshold) {
  if (threshold <= 0) throw Error("interaction threshold must be positive");
  return buildInteractionGraph(cluster.mesh, threshold);
}

bool isConvexRegion(const LabeledMesh& mesh, int region, double rel_tol) {
  auto boundary = regionBoundary(mesh, region, false);
  if (boundary.empty()) return false;
  // Diameter estimate from the region's bounding box.
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = -lo;
  std::vector<char> in_region(mesh.vertexCount(), 0);
  double edge_sum = 0;
  for (auto [f, sign] : boundary) {
    const auto& t = mesh.faces[f];
    for (int i = 0; i < 3; ++i) {
      in_region[t[i]] = 1;
      edge_sum += (mesh.vertices[t[i]] - mesh.vertices[t[(i + 1) % 3]]).norm();
    }
  }
  const double mean_edge = edge_sum / (3.0 * boundary.size());
  std::vector<Vec3> pts;
  for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
    if (!in_region[v]) continue;
    lo = lo.cwiseMin(mesh.vertices[v]);
    hi = hi.cwiseMax(mesh.vertices[v]);
    pts.push_back(mesh.vertices[v]);
  }
  // An inscribed faceting of a smooth convex body violates face-plane
  // convexity by the chord sagitta, so allow a fraction of the edge length
  // on top of the requested relative slack.
  const double slack = (hi - lo).norm() * rel_tol + 0.05 * mean_edge;
  for (auto [f, sign] : boundary) {
    Vec3 n = mesh.faceNormal(f) * sign;  // outward for the region
    if (n.squaredNorm() == 0) continue;
    const double limit = n.dot(mesh.faceCentroid(f)) + slack;
    for (const Vec3& p : pts) {
      if (n.dot(p) > limit) return false;
    }
  }
  return true;
}

void jitterMesh(LabeledMesh& mesh, double amplitude, std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (auto& v : mesh.vertices) {
    v.x() += amplitude * (2.0 * rng.uniform() - 1.0);
    v.y() += amplitude * (2.0 * rng.uniform() - 1.0);
    v.z() += amplitude * (2.0 * rng.uniform() - 1.0);
  }
}

}  // namespace bubbles
