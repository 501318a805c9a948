#include "bubbles/classify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "bubbles/variation.hpp"

namespace bubbles {

std::string configurationName(Configuration c) {
  switch (c) {
    case Configuration::DisjointBalls: return "disjoint_balls";
    case Configuration::StandardDoubleBubble: return "standard_double_bubble";
    case Configuration::BallPlusDoubleBubble: return "ball_plus_double_bubble";
    case Configuration::LinedUpTriple: return "lined_up_triple";
    case Configuration::StandardTriple: return "standard_triple";
    case Configuration::Unclassified: return "unclassified";
  }
  throw Error("unreachable");
}

SphereFit fitSphere(const std::vector<Vec3>& points) {
  if (points.size() < 4) throw Error("sphere fit needs at least 4 points");
  // algebraic seed: |p|^2 = 2 c.p + (R^2 - |c|^2)
  Eigen::MatrixXd A(points.size(), 4);
  Eigen::VectorXd rhs(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    A(i, 0) = 2 * points[i].x();
    A(i, 1) = 2 * points[i].y();
    A(i, 2) = 2 * points[i].z();
    A(i, 3) = 1.0;
    rhs(i) = points[i].squaredNorm();
  }
  Eigen::Vector4d sol =
      (A.transpose() * A).ldlt().solve(A.transpose() * rhs);
  SphereFit fit;
  fit.center = Vec3(sol(0), sol(1), sol(2));
  fit.radius = std::sqrt(std::max(0.0, sol(3) + fit.center.squaredNorm()));
  // Gauss-Newton refinement of the geometric residual
  for (int it = 0; it < 4; ++it) {
    Eigen::Matrix4d JtJ = Eigen::Matrix4d::Zero();
    Eigen::Vector4d Jtr = Eigen::Vector4d::Zero();
    for (const auto& p : points) {
      const Vec3 d = p - fit.center;
      const double len = d.norm();
      if (len == 0) continue;
      Eigen::Vector4d J;
      J << -d.x() / len, -d.y() / len, -d.z() / len, -1.0;
      const double r = len - fit.radius;
      JtJ += J * J.transpose();
      Jtr += J * r;
    }
    const Eigen::Vector4d delta = JtJ.ldlt().solve(-Jtr);
    fit.center += Vec3(delta(0), delta(1), delta(2));
    fit.radius += delta(3);
  }
  double acc = 0;
  for (const auto& p : points) {
    const double r = (p - fit.center).norm() - fit.radius;
    acc += r * r;
  }
  fit.rms = std::sqrt(acc / points.size());
  return fit;
}

PlaneFit fitPlane(const std::vector<Vec3>& points) {
  if (points.size() < 3) throw Error("plane fit needs at least 3 points");
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  PlaneFit fit;
  fit.point = centroid;
  fit.normal = eig.eigenvectors().col(0);
  double acc = 0;
  for (const auto& p : points) {
    const double d = fit.normal.dot(p - centroid);
    acc += d * d;
  }
  fit.rms = std::sqrt(acc / points.size());
  return fit;
}

bool angleSumWitness(double a1, double a2, double a3) {
  if (!(a1 > 0 && a2 > 0 && a3 > 0)) return false;
  if (std::abs(a1 + a2 + a3 - 2 * kPi) > 1e-9) return false;
  return std::max({a1, a2, a3}) >= kPi / 3 - 1e-12;
}

namespace {

std::vector<Vec3> patchPoints(const LabeledMesh& mesh, RegionPair label) {
  std::set<int> vs;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (mesh.labels[f] == label) {
      for (int i = 0; i < 3; ++i) vs.insert(mesh.faces[f][i]);
    }
  }
  std::vector<Vec3> pts;
  pts.reserve(vs.size());
  for (int v : vs) pts.push_back(mesh.vertices[v]);
  return pts;
}

std::vector<int> regionVertices(const LabeledMesh& mesh, int region) {
  std::set<int> vs;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (mesh.labels[f].contains(region)) {
      for (int i = 0; i < 3; ++i) vs.insert(mesh.faces[f][i]);
    }
  }
  return {vs.begin(), vs.end()};
}

}  // namespace

double regionSurfaceDistance(const LabeledMesh& mesh, int region_a,
                             int region_b) {
  const std::vector<int> va = regionVertices(mesh, region_a);
  const std::vector<int> vb = regionVertices(mesh, region_b);
  if (va.empty() || vb.empty()) return std::numeric_limits<double>::max();
  // grid hash on the smaller set
  const std::vector<int>& small = va.size() <= vb.size() ? va : vb;
  const std::vector<int>& large = va.size() <= vb.size() ? vb : va;
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = -lo;
  for (int v : small) {
    lo = lo.cwiseMin(mesh.vertices[v]);
    hi = hi.cwiseMax(mesh.vertices[v]);
  }
  const double cell = std::max((hi - lo).maxCoeff() / 64.0, 1e-12);
  auto key = [&](const Vec3& p) {
    const int ix = static_cast<int>(std::floor((p.x() - lo.x()) / cell));
    const int iy = static_cast<int>(std::floor((p.y() - lo.y()) / cell));
    const int iz = static_cast<int>(std::floor((p.z() - lo.z()) / cell));
    return std::make_tuple(ix, iy, iz);
  };
  std::map<std::tuple<int, int, int>, std::vector<int>> grid;
  for (int v : small) grid[key(mesh.vertices[v])].push_back(v);
  double best = std::numeric_limits<double>::max();
  for (int v : large) {
    const Vec3& p = mesh.vertices[v];
    auto [cx, cy, cz] = key(p);
    const int reach =
        best == std::numeric_limits<double>::max()
            ? 1
            : std::max(1, static_cast<int>(std::ceil(best / cell)));
    for (int dx = -reach; dx <= reach; ++dx) {
      for (int dy = -reach; dy <= reach; ++dy) {
        for (int dz = -reach; dz <= reach; ++dz) {
          auto it = grid.find({cx + dx, cy + dy, cz + dz});
          if (it == grid.end()) continue;
          for (int u : it->second) {
            best = std::min(best, (mesh.vertices[u] - p).norm());
          }
        }
      }
    }
    if (best == 0) return 0;
  }
  // fall back to exhaustive when the grid walk never met the other set
  if (best == std::numeric_limits<double>::max()) {
    for (int v : large) {
      for (int u : small) {
        best = std::min(best,
                        (mesh.vertices[u] - mesh.vertices[v]).norm());
      }
    }
  }
  return best;
}

namespace {

struct Checks {
  const Cluster& cluster;
  const ToleranceProfile& tol;
  Classification& out;
  std::map<int, SphereFit> spheres;      // region -> exterior patch fit
  std::map<std::pair<int, int>, PlaneFit> planes;

  bool sphereFitOk(int region) {
    const auto pts = patchPoints(cluster.mesh, RegionPair(0, region));
    if (pts.size() < 4) {
      out.failed_predicates.push_back("exterior_patch_missing_" +
                                      std::to_string(region));
      return false;
    }
    SphereFit fit = fitSphere(pts);
    spheres[region] = fit;
    out.fit_rms_rel[{0, region}] = fit.rmsRel();
    if (fit.rmsRel() > tol.fit_rms_rel) {
      out.failed_predicates.push_back("sphere_fit_region_" +
                                      std::to_string(region));
      return false;
    }
    return true;
  }

  bool planeFitOk(int i, int j, double scale) {
    const auto pts = patchPoints(cluster.mesh, RegionPair(i, j));
    if (pts.size() < 3) {
      out.failed_predicates.push_back("interface_missing_" +
                                      std::to_string(i) + "_" +
                                      std::to_string(j));
      return false;
    }
    PlaneFit fit = fitPlane(pts);
    planes[{i, j}] = fit;
    const double rel = fit.rms / scale;
    out.fit_rms_rel[{i, j}] = rel;
    if (rel > tol.fit_rms_rel) {
      out.failed_predicates.push_back("plane_fit_interface_" +
                                      std::to_string(i) + "_" +
                                      std::to_string(j));
      return false;
    }
    return true;
  }

  bool anglesOk() {
    bool ok = true;
    for (const auto& curve : extractJunctionCurves(cluster.mesh)) {
      const auto stats = junctionAngles(cluster, curve);
      if (stats.worstDeviationFrom(120.0) > tol.angle_deg) {
        ok = false;
      }
    }
    out.angle_pass = ok;
    if (!ok) out.failed_predicates.push_back("junction_angles_120");
    return ok;
  }

  bool equalLambdaOk(const std::vector<std::pair<int, int>>& edges) {
    bool ok = true;
    for (const auto& [i, j] : edges) {
      const double li = out.lambdas[i - 1], lj = out.lambdas[j - 1];
      const double scale = std::max(std::abs(li), std::abs(lj));
      if (scale == 0 || std::abs(li - lj) / scale > tol.multiplier_rel) {
        out.failed_predicates.push_back("equal_lambda_" + std::to_string(i) +
                                        "_" + std::to_string(j));
        ok = false;
      }
    }
    return ok;
  }
};

}  // namespace

Classification classify(const Cluster& cluster) {
  const LabeledMesh& mesh = cluster.mesh;
  const int k = cluster.k;
  if (k < 1 || k > 3) {
    throw UnsupportedK("classify supports k in {1,2,3}, got " +
                       std::to_string(k));
  }
  validateMesh(mesh);
  const ToleranceProfile& tol = cluster.tolerances;
  for (int i = 1; i <= k; ++i) {
    if (!isConvexRegion(mesh, i, tol.convexity_rel)) {
      throw ConvexityViolation("region " + std::to_string(i) +
                               " is not convex within tolerance");
    }
  }
  Classification out;
  out.k = k;
  const double area = totalArea(mesh);
  const InteractionGraph graph = buildInteractionGraph(mesh, 1e-6 * area);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      if (graph.edge(i, j)) edges.push_back({i, j});
    }
  }

  const VariationReport var = fitMultipliers(cluster);
  out.lambdas = var.lambdas;

  Checks checks{cluster, tol, out, {}, {}};

  // Case label from the interaction pattern.
  int case_label = 0;
  if (k <= 2) {
    case_label = edges.empty() ? 1 : 2;
  } else {
    switch (edges.size()) {
      case 0: case_label = 1; break;
      case 1: case_label = 2; break;
      case 2: case_label = 3; break;
      default: case_label = 4; break;
    }
  }
  out.case_label = case_label;

  // Tangency flags for non-interacting pairs.
  double rmin = std::numeric_limits<double>::max();
  for (int i = 1; i <= k; ++i) {
    const auto pts = patchPoints(mesh, RegionPair(0, i));
    if (pts.size() >= 4) {
      rmin = std::min(rmin, fitSphere(pts).radius);
    }
  }
  if (rmin == std::numeric_limits<double>::max()) rmin = std::cbrt(area);
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      if (graph.edge(i, j)) continue;
      out.tangency[{i, j}] =
          regionSurfaceDistance(mesh, i, j) <= tol.tangency_rel * rmin;
    }
  }

  auto finish = [&](Configuration cfg) {
    out.configuration =
        out.failed_predicates.empty() ? cfg : Configuration::Unclassified;
    return out;
  };

  if (case_label == 1) {
    out.angle_pass = true;  // no junctions to check
    for (int i = 1; i <= k; ++i) checks.sphereFitOk(i);
    return finish(Configuration::DisjointBalls);
  }

  if (k == 2 || (k == 3 && case_label == 2)) {
    const auto [i, j] = edges.front();
    bool si = checks.sphereFitOk(i), sj = checks.sphereFitOk(j);
    const double rscale = (si && sj)
        ? std::min(checks.spheres[i].radius, checks.spheres[j].radius)
        : std::cbrt(area);
    checks.planeFitOk(i, j, rscale);
    checks.anglesOk();
    checks.equalLambdaOk({{i, j}});
    if (k == 3) {
      const int third = 6 - i - j;
      checks.sphereFitOk(third);
      return finish(Configuration::BallPlusDoubleBubble);
    }
    return finish(Configuration::StandardDoubleBubble);
  }

  if (case_label == 3) {
    // path: the center interacts with both leaves
    int center = 0;
    for (int i = 1; i <= 3; ++i) {
      if (graph.degree(i) == 2) center = i;
    }
    if (center == 0) {
      out.failed_predicates.push_back("interaction_path_shape");
      return finish(Configuration::Unclassified);
    }
    std::vector<int> leaves;
    for (int i = 1; i <= 3; ++i) {
      if (i != center) leaves.push_back(i);
    }
    double rscale = std::cbrt(area);
    bool leaves_ok = true;
    for (int l : leaves) leaves_ok &= checks.sphereFitOk(l);
    if (leaves_ok) {
      rscale = std::min(checks.spheres[leaves[0]].radius,
                        checks.spheres[leaves[1]].radius);
    }
    for (int l : leaves) {
      checks.planeFitOk(std::min(center, l), std::max(center, l), rscale);
    }
    checks.anglesOk();

    // Middle cell: a sphere, or an axially symmetric CMC surface when the
    // separating planes are parallel (the Delaunay case).
    const auto mid_pts = patchPoints(mesh, RegionPair(0, center));
    bool middle_sphere = false;
    if (mid_pts.size() >= 4) {
      const SphereFit fit = fitSphere(mid_pts);
      out.fit_rms_rel[{0, center}] = fit.rmsRel();
      middle_sphere = fit.rmsRel() <= tol.fit_rms_rel;
    }
    std::vector<std::pair<int, int>> lambda_edges;
    if (middle_sphere) {
      for (int l : leaves) {
        lambda_edges.push_back({std::min(center, l), std::max(center, l)});
      }
      // distinguish the spherical sub-branches by the plane dihedral
      if (checks.planes.size() == 2) {
        const auto& pa = checks.planes.begin()->second;
        const auto& pb = std::next(checks.planes.begin())->second;
        const double cosang = std::abs(pa.normal.dot(pb.normal));
        if (cosang > std::cos(rad(1.0))) {
          out.branch = "parallel_sphere";
        } else {
          // does the middle cell reach the planes' intersection line?
          const Vec3 dline = pa.normal.cross(pb.normal).normalized();
          Eigen::Matrix<double, 2, 3> N;
          N.row(0) = pa.normal.transpose();
          N.row(1) = pb.normal.transpose();
          Eigen::Vector2d offs(pa.normal.dot(pa.point),
                               pb.normal.dot(pb.point));
          const Vec3 p0 =
              N.colPivHouseholderQr().solve(offs);  // min-norm point on L
          double dist = std::numeric_limits<double>::max();
          for (const auto& p : mid_pts) {
            const Vec3 d = p - p0;
            dist = std::min(dist, (d - d.dot(dline) * dline).norm());
          }
          if (dist <= tol.tangency_rel * rmin) {
            out.branch = "point_contact";
            // Wedge rigidity: contact forces a 60-degree opening.
            const double opening =
                180.0 - deg(std::acos(std::clamp(
                            checks.planes.begin()
                                ->second.normal.dot(
                                    std::next(checks.planes.begin())
                                        ->second.normal),
                            -1.0, 1.0)));
            const double dev = std::min(std::abs(opening - 60.0),
                                        std::abs((180.0 - opening) - 60.0));
            if (dev > tol.angle_deg) {
              out.failed_predicates.push_back("point_contact_wedge_60");
            }
          } else {
            out.branch = "non_parallel_sphere";
          }
        }
      }
    } else {
      // Delaunay middle: constant mean curvature of the lateral patch and
      // parallel separating planes. The multiplier law cannot pair the
      // middle with the lobes off the sphere member, so it is not applied.
      out.branch = "parallel_delaunay";
      const auto it = var.interfaces.find({0, center});
      bool cmc_ok = false;
      if (it != var.interfaces.end() && it->second.samples > 0) {
        const auto& st = it->second;
        cmc_ok = st.stddev_H <= 0.05 * std::abs(st.mean_H);
      }
      if (!cmc_ok) out.failed_predicates.push_back("middle_cmc_constancy");
      if (checks.planes.size() == 2) {
        const auto& pa = checks.planes.begin()->second;
        const auto& pb = std::next(checks.planes.begin())->second;
        if (std::abs(pa.normal.dot(pb.normal)) < std::cos(rad(1.0))) {
          out.failed_predicates.push_back("delaunay_planes_parallel");
        }
      }
    }
    checks.equalLambdaOk(lambda_edges);
    return finish(Configuration::LinedUpTriple);
  }

  // case 4: complete interaction graph
  for (int i = 1; i <= 3; ++i) checks.sphereFitOk(i);
  double rscale = std::cbrt(area);
  if (checks.spheres.size() == 3) {
    rscale = std::min({checks.spheres[1].radius, checks.spheres[2].radius,
                       checks.spheres[3].radius});
  }
  for (const auto& [i, j] : edges) checks.planeFitOk(i, j, rscale);
  checks.anglesOk();
  checks.equalLambdaOk(edges);
  if (checks.planes.size() == 3) {
    // the three interface planes must share a line, with 120-degree wedges
    std::vector<Vec3> dirs;
    for (const auto& [key, fit] : checks.planes) {
      for (const auto& [key2, fit2] : checks.planes) {
        if (key < key2) {
          Vec3 d = fit.normal.cross(fit2.normal);
          if (d.norm() > 1e-9) dirs.push_back(d.normalized());
        }
      }
    }
    bool common_line = dirs.size() == 3;
    for (std::size_t a = 0; common_line && a + 1 < dirs.size(); ++a) {
      if (std::abs(dirs[a].dot(dirs[a + 1])) < std::cos(rad(tol.angle_deg))) {
        common_line = false;
      }
    }
    if (!common_line) {
      out.failed_predicates.push_back("interfaces_share_line");
    } else {
      // wedge openings per region from the two planes bounding it
      std::vector<double> openings;
      for (int i = 1; i <= 3; ++i) {
        std::vector<const PlaneFit*> bounding;
        for (const auto& [key, fit] : checks.planes) {
          if (key.first == i || key.second == i) bounding.push_back(&fit);
        }
        if (bounding.size() != 2) continue;
        // orient both normals away from the region's sphere center
        Vec3 na = bounding[0]->normal, nb = bounding[1]->normal;
        const Vec3 c = checks.spheres.count(i) ? checks.spheres[i].center
                                               : Vec3::Zero();
        if (na.dot(c - bounding[0]->point) > 0) na = -na;
        if (nb.dot(c - bounding[1]->point) > 0) nb = -nb;
        openings.push_back(kPi -
                           std::acos(std::clamp(na.dot(nb), -1.0, 1.0)));
      }
      bool wedges_ok = openings.size() == 3;
      if (wedges_ok) {
        wedges_ok = angleSumWitness(openings[0], openings[1], openings[2]);
        for (double a : openings) {
          if (std::abs(deg(a) - 120.0) > tol.angle_deg) wedges_ok = false;
        }
      }
      if (!wedges_ok) out.failed_predicates.push_back("wedge_openings_120");
    }
  }
  return finish(Configuration::StandardTriple);
}

nlohmann::ordered_json Classification::toJson() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["case"] = case_label;
  j["configuration"] = configurationName(configuration);
  if (!branch.empty()) j["branch"] = branch;
  nlohmann::ordered_json fits = nlohmann::ordered_json::object();
  for (const auto& [key, rms] : fit_rms_rel) {
    fits[std::to_string(key.first) + "_" + std::to_string(key.second)] = rms;
  }
  j["fit_rms_rel"] = fits;
  j["lambdas"] = lambdas;
  j["angle_pass"] = angle_pass;
  nlohmann::ordered_json tang = nlohmann::ordered_json::object();
  for (const auto& [key, flag] : tangency) {
    tang[std::to_string(key.first) + "_" + std::to_string(key.second)] = flag;
  }
  j["tangency"] = tang;
  j["failed_predicates"] = failed_predicates;
  return j;
}

}  // namespace bubbles
