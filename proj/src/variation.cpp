#include "bubbles/variation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

namespace bubbles {

double fieldDot(const GradientField& a, const GradientField& b) {
  std::vector<double> terms(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) terms[i] = a[i].dot(b[i]);
  return pairwiseSum(terms);
}

double fieldNorm(const GradientField& g) {
  return std::sqrt(fieldDot(g, g));
}

GradientField areaGradient(const LabeledMesh& mesh) {
  GradientField g(mesh.vertexCount(), Vec3::Zero());
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    const Vec3 c = (p1 - p0).cross(p2 - p0);
    const double len = c.norm();
    if (len == 0) {
      throw DegenerateTriangle("zero-area face " + std::to_string(f));
    }
    const Vec3 n = c / len;
    g[t[0]] += 0.5 * (p1 - p2).cross(n);
    g[t[1]] += 0.5 * (p2 - p0).cross(n);
    g[t[2]] += 0.5 * (p0 - p1).cross(n);
  }
  return g;
}

GradientField volumeGradient(const LabeledMesh& mesh, int region) {
  GradientField g(mesh.vertexCount(), Vec3::Zero());
  bool seen = false;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (!mesh.labels[f].contains(region)) continue;
    seen = true;
    const double s = mesh.labels[f].orientationSign(region) / 6.0;
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    g[t[0]] += s * p1.cross(p2);
    g[t[1]] += s * p2.cross(p0);
    g[t[2]] += s * p0.cross(p1);
  }
  if (!seen) {
    throw OpenSurface("region " + std::to_string(region) + " has no faces");
  }
  return g;
}

namespace {

// Interior-vertex mean curvature statistics of one labeled patch. The sign
// follows the patch orientation (see VariationReport); boundary vertices of
// the patch carry the junction's conormal pull and are excluded.
InterfaceStats patchCurvatureStats(const LabeledMesh& mesh, RegionPair label) {
  InterfaceStats st;
  std::vector<int> faces;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (mesh.labels[f] == label) faces.push_back(static_cast<int>(f));
  }
  if (faces.empty()) return st;
  // patch boundary = edges with exactly one incident patch face
  std::unordered_map<EdgeKey, int, EdgeKeyHash> edge_count;
  for (int f : faces) {
    const auto& t = mesh.faces[f];
    for (int e = 0; e < 3; ++e) ++edge_count[EdgeKey(t[e], t[(e + 1) % 3])];
  }
  std::set<int> boundary_vertex;
  for (const auto& [e, c] : edge_count) {
    if (c == 1) {
      boundary_vertex.insert(e.a);
      boundary_vertex.insert(e.b);
    }
  }
  std::unordered_map<int, Vec3> grad, nrm;
  std::unordered_map<int, double> dual;
  auto acc = [](std::unordered_map<int, Vec3>& m, int v, const Vec3& d) {
    auto [it, fresh] = m.try_emplace(v, Vec3::Zero());
    it->second += d;
  };
  std::vector<double> areas;
  areas.reserve(faces.size());
  const double flip = (label.lo == 0) ? -1.0 : 1.0;
  for (int f : faces) {
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    const Vec3 c = (p1 - p0).cross(p2 - p0);
    const double area = 0.5 * c.norm();
    areas.push_back(area);
    if (area == 0) continue;
    const Vec3 n = c.normalized();
    acc(grad, t[0], 0.5 * (p1 - p2).cross(n));
    acc(grad, t[1], 0.5 * (p2 - p0).cross(n));
    acc(grad, t[2], 0.5 * (p0 - p1).cross(n));
    for (int i = 0; i < 3; ++i) {
      acc(nrm, t[i], flip * 0.5 * c);
      dual[t[i]] += area / 3.0;
    }
  }
  st.area = pairwiseSum(areas);
  std::vector<double> hs;
  for (const auto& [v, g] : grad) {
    if (boundary_vertex.count(v)) continue;
    const double a = dual[v];
    if (a == 0) continue;
    hs.push_back(g.dot(nrm[v].normalized()) / a);
  }
  st.samples = static_cast<int>(hs.size());
  if (!hs.empty()) {
    std::sort(hs.begin(), hs.end());  // deterministic reduction order
    st.mean_H = pairwiseSum(hs) / hs.size();
    std::vector<double> dev(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
      dev[i] = (hs[i] - st.mean_H) * (hs[i] - st.mean_H);
    }
    st.stddev_H = std::sqrt(pairwiseSum(dev) / hs.size());
  }
  return st;
}

}  // namespace

VariationReport fitMultipliers(const Cluster& cluster) {
  const LabeledMesh& mesh = cluster.mesh;
  const int k = cluster.k;
  VariationReport rep;
  const GradientField ga = areaGradient(mesh);
  std::vector<GradientField> gv;
  gv.reserve(k);
  for (int i = 1; i <= k; ++i) gv.push_back(volumeGradient(mesh, i));

  Eigen::MatrixXd M(k, k);
  Eigen::VectorXd b(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      M(i, j) = M(j, i) = fieldDot(gv[i], gv[j]);
    }
    b(i) = fieldDot(ga, gv[i]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smax = svd.singularValues()(0);
  rep.rank_deficient = svd.singularValues()(k - 1) <= 1e-12 * smax;
  svd.setThreshold(1e-12);
  const Eigen::VectorXd lambda = svd.solve(b);
  rep.lambdas.assign(lambda.data(), lambda.data() + k);

  GradientField res = ga;
  for (int i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < res.size(); ++v) res[v] -= lambda(i) * gv[i][v];
  }
  rep.residual_abs = fieldNorm(res);
  const double ga_norm = fieldNorm(ga);
  rep.residual_rel = ga_norm > 0 ? rep.residual_abs / ga_norm : 0.0;

  std::set<RegionPair> labels(mesh.labels.begin(), mesh.labels.end());
  for (const RegionPair& l : labels) {
    rep.interfaces[{l.lo, l.hi}] = patchCurvatureStats(mesh, l);
  }
  for (const JunctionCurve& c : extractJunctionCurves(mesh)) {
    rep.junctions.push_back(junctionAngles(cluster, c));
  }
  return rep;
}

double JunctionAngleStats::worstDeviationFrom(double target_deg) const {
  double worst = 0;
  for (const auto& p : pairs) {
    worst = std::max(worst, std::abs(p.median_deg - target_deg));
  }
  return worst;
}

JunctionAngleStats junctionAngles(const Cluster& cluster,
                                  const JunctionCurve& curve) {
  const LabeledMesh& mesh = cluster.mesh;
  JunctionAngleStats stats;
  stats.edges = curve.edgeCount();
  stats.is_loop = curve.is_loop;
  if (curve.vertices.size() < 2) return stats;

  EdgeIncidence inc = buildEdgeIncidence(mesh);
  // vertex -> faces, per label
  std::map<RegionPair, std::unordered_map<int, std::vector<int>>> at_vertex;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    for (int i = 0; i < 3; ++i) {
      at_vertex[mesh.labels[f]][mesh.faces[f][i]].push_back(
          static_cast<int>(f));
    }
  }

  std::map<std::pair<RegionPair, RegionPair>, std::vector<double>> angles;
  const std::size_t ne = stats.edges;
  for (std::size_t e = 0; e < ne; ++e) {
    const int va = curve.vertices[e];
    const int vb = curve.vertices[(e + 1) % curve.vertices.size()];
    const auto it = inc.find(EdgeKey(va, vb));
    if (it == inc.end() || it->second.size() != 3) continue;
    const Vec3 mid = 0.5 * (mesh.vertices[va] + mesh.vertices[vb]);
    const Vec3 d = (mesh.vertices[vb] - mesh.vertices[va]).normalized();

    struct PatchDir {
      RegionPair label;
      Vec3 tangent;
    };
    std::vector<PatchDir> dirs;
    for (int f : it->second) {
      const RegionPair label = mesh.labels[f];
      const auto& vmap = at_vertex[label];
      // three rings of patch faces around the edge
      std::set<int> ring;
      for (int v : {va, vb}) {
        auto vit = vmap.find(v);
        if (vit == vmap.end()) continue;
        for (int g : vit->second) ring.insert(g);
      }
      for (int grow = 0; grow < 2; ++grow) {
        std::set<int> verts;
        for (int g : ring) {
          for (int i = 0; i < 3; ++i) verts.insert(mesh.faces[g][i]);
        }
        for (int v : verts) {
          auto vit = vmap.find(v);
          if (vit == vmap.end()) continue;
          for (int g : vit->second) ring.insert(g);
        }
      }
      // area-weighted regression of the face normal against the distance
      // to the edge line, evaluated at distance zero
      const Vec3 pa = mesh.vertices[va];
      double sw = 0, sd = 0, sdd = 0;
      Vec3 sn = Vec3::Zero(), sdn = Vec3::Zero();
      for (int g : ring) {
        const Vec3 av = mesh.faceAreaVector(g);
        const double w = av.norm();
        if (w == 0) continue;
        const Vec3 rel = mesh.faceCentroid(g) - pa;
        const double dist = (rel - rel.dot(d) * d).norm();
        const Vec3 n = av / w;
        sw += w;
        sd += w * dist;
        sdd += w * dist * dist;
        sn += w * n;
        sdn += w * dist * n;
      }
      const double det = sw * sdd - sd * sd;
      Vec3 n = sn;  // fall back to the plain average
      if (std::abs(det) > 1e-30) {
        n = (sdd * sn - sd * sdn) / det;
      }
      if (n.norm() < 1e-12) continue;
      n.normalize();
      Vec3 tangent = n.cross(d);
      if (tangent.norm() < 1e-12) continue;
      tangent.normalize();
      // point into the patch: align with the immediate face
      if (tangent.dot(mesh.faceCentroid(f) - mid) < 0) tangent = -tangent;
      dirs.push_back({label, tangent});
    }
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = i + 1; j < dirs.size(); ++j) {
        auto key = std::minmax(dirs[i].label, dirs[j].label);
        const double cosang =
            std::clamp(dirs[i].tangent.dot(dirs[j].tangent), -1.0, 1.0);
        angles[{key.first, key.second}].push_back(deg(std::acos(cosang)));
      }
    }
  }
  for (auto& [key, vals] : angles) {
    std::sort(vals.begin(), vals.end());
    JunctionPairAngles pa;
    pa.patch_a = key.first;
    pa.patch_b = key.second;
    pa.min_deg = vals.front();
    pa.max_deg = vals.back();
    pa.median_deg = vals[vals.size() / 2];
    stats.pairs.push_back(pa);
  }
  return stats;
}

YConeResult yConeStationarity(const Vec3& v, const Vec3& v1, const Vec3& v2) {
  YConeResult res;
  res.defect = std::numeric_limits<double>::max();
  // 8 sign choices fall into 4 classes under the global flip.
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      res.defect = std::min(res.defect, (v + s1 * v1 + s2 * v2).norm());
    }
  }
  res.stationary = res.defect <= 1e-9;
  return res;
}

TangentCone tangentConeAt(const LabeledMesh& mesh, int region, int vertex,
                          double flat_tol_deg) {
  if (!isConvexRegion(mesh, region, 1e-6)) {
    throw NonConvexInput("region " + std::to_string(region) +
                         " fails the supporting-plane convexity check");
  }
  TangentCone cone;
  std::set<int> neighbors;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (!mesh.labels[f].contains(region)) continue;
    const auto& t = mesh.faces[f];
    for (int i = 0; i < 3; ++i) {
      if (t[i] == vertex) {
        neighbors.insert(t[(i + 1) % 3]);
        neighbors.insert(t[(i + 2) % 3]);
      }
    }
  }
  if (neighbors.empty()) {
    throw Error("vertex is not on the region boundary");
  }
  const Vec3 p = mesh.vertices[vertex];
  for (int v : neighbors) {
    cone.generators.push_back((mesh.vertices[v] - p).normalized());
  }
  // Flatness: smallest principal direction of the generator cloud.
  Eigen::MatrixXd G(cone.generators.size(), 3);
  for (std::size_t i = 0; i < cone.generators.size(); ++i) {
    G.row(i) = cone.generators[i].transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(G, Eigen::ComputeFullV);
  const Vec3 n = svd.matrixV().col(2);
  double worst = 0;
  for (const auto& g : cone.generators) {
    worst = std::max(worst, std::abs(g.dot(n)));
  }
  cone.flat_deviation_deg = deg(std::asin(std::min(1.0, worst)));
  cone.half_space = cone.flat_deviation_deg <= flat_tol_deg;

  // Wedge: a generator pair running through the vertex along an edge.
  double best_opposite = 1.0;
  std::pair<std::size_t, std::size_t> axis{0, 0};
  for (std::size_t i = 0; i < cone.generators.size(); ++i) {
    for (std::size_t j = i + 1; j < cone.generators.size(); ++j) {
      const double dot = cone.generators[i].dot(cone.generators[j]);
      if (dot < best_opposite) {
        best_opposite = dot;
        axis = {i, j};
      }
    }
  }
  if (best_opposite < std::cos(kPi - rad(2.0)) && !cone.half_space) {
    const Vec3 dline =
        (cone.generators[axis.first] - cone.generators[axis.second])
            .normalized();
    double max_angle = 0;
    std::vector<Vec3> projected;
    for (std::size_t i = 0; i < cone.generators.size(); ++i) {
      if (i == axis.first || i == axis.second) continue;
      Vec3 q = cone.generators[i] - cone.generators[i].dot(dline) * dline;
      if (q.norm() < 1e-9) continue;
      projected.push_back(q.normalized());
    }
    for (std::size_t i = 0; i < projected.size(); ++i) {
      for (std::size_t j = i + 1; j < projected.size(); ++j) {
        max_angle = std::max(
            max_angle,
            std::acos(std::clamp(projected[i].dot(projected[j]), -1.0, 1.0)));
      }
    }
    if (!projected.empty()) cone.wedge_opening_deg = deg(max_angle);
  }
  return cone;
}

std::vector<double> regionVertexCurvature(const LabeledMesh& mesh, int region,
                                          int smoothing_passes) {
  std::vector<Vec3> grad(mesh.vertexCount(), Vec3::Zero());
  std::vector<Vec3> nrm(mesh.vertexCount(), Vec3::Zero());
  std::vector<double> dual(mesh.vertexCount(), 0.0);
  std::vector<char> on_region(mesh.vertexCount(), 0);
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (!mesh.labels[f].contains(region)) continue;
    const int sign = mesh.labels[f].orientationSign(region);
    const auto& t = mesh.faces[f];
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    const Vec3 c = (p1 - p0).cross(p2 - p0);
    const double area = 0.5 * c.norm();
    if (area == 0) continue;
    const Vec3 n = c.normalized();
    grad[t[0]] += 0.5 * (p1 - p2).cross(n);
    grad[t[1]] += 0.5 * (p2 - p0).cross(n);
    grad[t[2]] += 0.5 * (p0 - p1).cross(n);
    for (int i = 0; i < 3; ++i) {
      nrm[t[i]] += sign * 0.5 * c;
      dual[t[i]] += area / 3.0;
      on_region[t[i]] = 1;
    }
  }
  std::vector<double> h(mesh.vertexCount(), 0.0);
  for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
    if (on_region[v] && dual[v] > 0) {
      h[v] = grad[v].dot(nrm[v].normalized()) / dual[v];
    }
  }
  if (smoothing_passes > 0) {
    // umbrella smoothing over the region's vertex graph
    std::vector<std::vector<int>> adj(mesh.vertexCount());
    for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
      if (!mesh.labels[f].contains(region)) continue;
      const auto& t = mesh.faces[f];
      for (int i = 0; i < 3; ++i) {
        adj[t[i]].push_back(t[(i + 1) % 3]);
        adj[t[i]].push_back(t[(i + 2) % 3]);
      }
    }
    for (int pass = 0; pass < smoothing_passes; ++pass) {
      std::vector<double> next = h;
      for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
        if (!on_region[v] || adj[v].empty()) continue;
        double acc = h[v];
        for (int u : adj[v]) acc += h[u];
        next[v] = acc / (1.0 + adj[v].size());
      }
      h = std::move(next);
    }
  }
  return h;
}

HKResult heintzeKarcherCheck(const LabeledMesh& mesh, int region) {
  if (!isConvexRegion(mesh, region, 1e-6)) {
    throw NonConvexInput("region " + std::to_string(region) +
                         " fails the supporting-plane convexity check");
  }
  HKResult res;
  res.lhs = computeVolume(mesh, region);
  const std::vector<double> h = regionVertexCurvature(mesh, region, 2);
  // characteristic curvature scale for the positivity cutoff
  const double h_eps = 1e-9 / std::cbrt(std::max(res.lhs, 1e-300));
  std::vector<double> terms, areas, excluded;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (!mesh.labels[f].contains(region)) continue;
    const auto& t = mesh.faces[f];
    const double hf = (h[t[0]] + h[t[1]] + h[t[2]]) / 3.0;
    const double area = mesh.faceArea(f);
    areas.push_back(area);
    if (hf <= h_eps) {
      excluded.push_back(area);
      continue;
    }
    terms.push_back(area / hf);
  }
  const double total_area = pairwiseSum(areas);
  res.excluded_area_rel =
      total_area > 0 ? pairwiseSum(excluded) / total_area : 0.0;
  if (res.excluded_area_rel > 0.05) {
    throw CurvatureUnavailable(
        "more than 5% of the boundary area has non-positive curvature");
  }
  res.rhs = (2.0 / 3.0) * pairwiseSum(terms);
  res.gap_rel = (res.rhs - res.lhs) / res.lhs;
  return res;
}

nlohmann::ordered_json VariationReport::toJson() const {
  nlohmann::ordered_json j;
  j["lambdas"] = lambdas;
  j["residual_abs"] = residual_abs;
  j["residual_rel"] = residual_rel;
  j["rank_deficient"] = rank_deficient;
  nlohmann::ordered_json ifs = nlohmann::ordered_json::object();
  for (const auto& [key, st] : interfaces) {
    nlohmann::ordered_json e;
    e["mean_H"] = st.mean_H;
    e["stddev_H"] = st.stddev_H;
    e["area"] = st.area;
    e["samples"] = st.samples;
    ifs[std::to_string(key.first) + "_" + std::to_string(key.second)] = e;
  }
  j["interfaces"] = ifs;
  nlohmann::ordered_json js = nlohmann::ordered_json::array();
  for (const auto& stats : junctions) {
    nlohmann::ordered_json e;
    e["edges"] = stats.edges;
    e["loop"] = stats.is_loop;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : stats.pairs) {
      nlohmann::ordered_json pj;
      pj["patches"] = {std::to_string(p.patch_a.lo) + "_" +
                           std::to_string(p.patch_a.hi),
                       std::to_string(p.patch_b.lo) + "_" +
                           std::to_string(p.patch_b.hi)};
      pj["median_deg"] = p.median_deg;
      pj["min_deg"] = p.min_deg;
      pj["max_deg"] = p.max_deg;
      pairs.push_back(pj);
    }
    e["pairs"] = pairs;
    js.push_back(e);
  }
  j["junctions"] = js;
  return j;
}

}  // namespace bubbles
