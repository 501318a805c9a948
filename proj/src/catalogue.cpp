#include "bubbles/catalogue.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bubbles/catalogue_detail.hpp"
#include "bubbles/meshing.hpp"
#include "bubbles/solve.hpp"

namespace bubbles {

std::string kindName(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::DisjointBalls: return "disjoint_balls";
    case ConfigKind::StandardDoubleBubble: return "standard_double_bubble";
    case ConfigKind::BallPlusDoubleBubble: return "ball_plus_double_bubble";
    case ConfigKind::LinedUpTriple: return "lined_up_triple";
    case ConfigKind::StandardTriple: return "standard_triple";
  }
  throw Error("unreachable");
}

ConfigKind kindFromName(const std::string& name) {
  if (name == "disjoint_balls") return ConfigKind::DisjointBalls;
  if (name == "standard_double_bubble") return ConfigKind::StandardDoubleBubble;
  if (name == "ball_plus_double_bubble") return ConfigKind::BallPlusDoubleBubble;
  if (name == "lined_up_triple") return ConfigKind::LinedUpTriple;
  if (name == "standard_triple") return ConfigKind::StandardTriple;
  throw FormatError("unknown configuration kind: " + name);
}

std::string branchName(LinedUpBranch b) {
  switch (b) {
    case LinedUpBranch::Auto: return "auto";
    case LinedUpBranch::NonParallel: return "non_parallel";
    case LinedUpBranch::Parallel: return "parallel";
    case LinedUpBranch::PointContact: return "point_contact";
  }
  throw Error("unreachable");
}

namespace detail {

int evenRingSize(double circumference, double resolution) {
  int n = static_cast<int>(std::ceil(circumference / resolution));
  n = std::max(n, 12);
  if (n % 2) ++n;
  return n;
}

VertexStrip makeRing(LabeledMesh& mesh, const std::vector<Vec3>& pts) {
  VertexStrip s;
  s.closed = true;
  s.idx.reserve(pts.size());
  for (const auto& p : pts) s.idx.push_back(mesh.addVertex(p));
  const std::size_t n = pts.size();
  s.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.t[i] = static_cast<double>(i) / n;
  return s;
}

std::vector<Vec3> ringPoints(const Vec3& center, const Vec3& e1, const Vec3& e2,
                             double radius, int n) {
  std::vector<Vec3> pts(n);
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * k / n;
    pts[k] = center + radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }
  return pts;
}

void emitCap(LabeledMesh& mesh, const Vec3& center, double r, const Vec3& axis,
             const Vec3& e1, const Vec3& e2, double theta_max,
             const VertexStrip& boundary, double resolution, RegionPair label,
             int region) {
  const std::size_t face_begin = mesh.faceCount();
  const int M = std::max(
      3, static_cast<int>(std::llround(theta_max * r / resolution)));
  const int N = static_cast<int>(boundary.size());
  const double sin_max = std::sin(theta_max);
  VertexStrip outer = boundary;
  for (int j = M - 1; j >= 1; --j) {
    const double theta = theta_max * j / M;
    int nj = std::max(
        4, static_cast<int>(std::llround(N * std::sin(theta) / sin_max)));
    nj = std::min(nj, 4 * N);
    const Vec3 ring_center = center + r * std::cos(theta) * axis;
    VertexStrip inner =
        makeRing(mesh, ringPoints(ring_center, e1, e2, r * std::sin(theta), nj));
    zipStrips(mesh, inner, outer, label);
    outer = inner;
  }
  const int apex = mesh.addVertex(center + r * axis);
  zipStrips(mesh, VertexStrip::point(apex), outer, label);
  smoothPatchInterior(mesh, face_begin, mesh.faceCount(), [&](const Vec3& p) {
    return Vec3(center + r * (p - center).normalized());
  });
  // Exterior patches ({0, region}) carry inward normals per the label rule.
  const bool inward = label.lo == 0;
  orientFaces(mesh, face_begin, mesh.faceCount(), [&](const Vec3& c) {
    return inward ? Vec3(center - c) : Vec3(c - center);
  });
  (void)region;
}

void emitDisk(LabeledMesh& mesh, const Vec3& center, const Vec3& e1,
              const Vec3& e2, const VertexStrip& boundary, double radius,
              double resolution, RegionPair label, const Vec3& normal_ref) {
  const std::size_t face_begin = mesh.faceCount();
  const int M = std::max(
      2, static_cast<int>(std::llround(radius / resolution)));
  const int N = static_cast<int>(boundary.size());
  VertexStrip outer = boundary;
  for (int j = M - 1; j >= 1; --j) {
    const double rho = radius * j / M;
    int nj = std::max(4, static_cast<int>(std::llround(double(N) * j / M)));
    nj = std::min(nj, N);
    VertexStrip inner = makeRing(mesh, ringPoints(center, e1, e2, rho, nj));
    zipStrips(mesh, inner, outer, label);
    outer = inner;
  }
  const int c = mesh.addVertex(center);
  zipStrips(mesh, VertexStrip::point(c), outer, label);
  const Vec3 n = normal_ref.normalized();
  smoothPatchInterior(mesh, face_begin, mesh.faceCount(), [&](const Vec3& p) {
    return Vec3(p - n * n.dot(p - center));
  });
  orientFaces(mesh, face_begin, mesh.faceCount(),
              [&](const Vec3&) { return normal_ref; });
}

void applyPlacementMotion(LabeledMesh& mesh, const Placement& placement) {
  if (placement.rotate_deg != 0.0) {
    const Mat3 R = Eigen::AngleAxisd(rad(placement.rotate_deg),
                                     placement.rotate_axis.normalized())
                       .toRotationMatrix();
    mesh.rotate(R);
  }
  if (placement.translate != Vec3::Zero()) mesh.translate(placement.translate);
}

void finishCluster(Cluster& cluster, const ConfigurationSpec& spec, double r,
                   BuildReport* report, const std::string& branch) {
  if (spec.placement) applyPlacementMotion(cluster.mesh, *spec.placement);
  if (spec.jitter_rel > 0) {
    jitterMesh(cluster.mesh, spec.jitter_rel * r, spec.seed);
  }
  if (report) {
    report->kind = kindName(spec.kind);
    report->branch = branch;
    report->r = r;
    report->lambda = r > 0 ? 2.0 / r : 0.0;
    report->target_volumes = spec.volumes;
    report->achieved_volumes.clear();
    for (int i = 1; i <= cluster.k; ++i) {
      report->achieved_volumes.push_back(
          computeVolumeUnchecked(cluster.mesh, i));
    }
    report->vertices = cluster.mesh.vertexCount();
    report->faces = cluster.mesh.faceCount();
  }
}

}  // namespace detail

using namespace detail;

double cutBallVolume(double r) {
  // Slice integral of the cross sections pi (r^2 - z^2) over z in [-r/2, r],
  // antiderivative pi (r^2 z - z^3/3).
  auto F = [&](double z) { return kPi * (r * r * z - z * z * z / 3.0); };
  return F(r) - F(-r / 2);
}

double solveDoubleBubbleRadius(double volume) {
  if (!(volume > 0)) throw NonPositiveVolume("volume must be positive");
  const double hi = std::cbrt(volume) * 2.0;
  return solveMonotone(
      [&](double r) { return cutBallVolume(r) / volume - 1.0; }, 0.0, hi,
      1e-14);
}

double linedUpSphericalMiddleVolume(double r) {
  // Ball of radius r truncated by two planes at distance r/2: the two caps
  // are disjoint for every feasible opening, so the volume is independent
  // of the dihedral between the planes.
  auto F = [&](double z) { return kPi * (r * r * z - z * z * z / 3.0); };
  const double cap = F(r) - F(r / 2);
  return 4.0 / 3.0 * kPi * r * r * r - 2.0 * cap;
}

Cluster buildStandardDoubleBubble(const ConfigurationSpec& spec,
                                  BuildReport* report) {
  if (spec.kind != ConfigKind::StandardDoubleBubble) {
    throw Error("spec kind mismatch");
  }
  if (spec.volumes.size() != 2) {
    throw Error("standard_double_bubble takes two volumes");
  }
  const double v = spec.volumes[0];
  if (!(v > 0)) throw NonPositiveVolume("volumes must be positive");
  if (std::abs(spec.volumes[1] - v) > 1e-9 * v) {
    throw NonEqualVolumes(
        "the convex standard double bubble requires equal volumes "
        "(flat interface forces equal lobes)");
  }
  const double r = solveDoubleBubbleRadius(v);
  const double rho = r * std::sqrt(3.0) / 2.0;
  const double theta_max = 2.0 * kPi / 3.0;
  const int M = static_cast<int>(std::llround(theta_max * r / spec.resolution));
  if (M < 3) {
    throw ResolutionTooCoarse("fewer than 3 vertex rings fit a lobe at "
                              "resolution " + std::to_string(spec.resolution));
  }
  const int N = evenRingSize(2 * kPi * rho, spec.resolution);

  Cluster cluster;
  cluster.k = 2;
  cluster.target_volumes = {v, v};
  cluster.tolerances = toleranceProfile("default");
  LabeledMesh& mesh = cluster.mesh;

  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), ez = Vec3::UnitZ();
  VertexStrip junction =
      makeRing(mesh, ringPoints(Vec3::Zero(), e1, e2, rho, N));
  emitCap(mesh, Vec3(0, 0, r / 2), r, ez, e1, e2, theta_max, junction,
          spec.resolution, RegionPair(0, 1), 1);
  emitCap(mesh, Vec3(0, 0, -r / 2), r, -ez, e1, e2, theta_max, junction,
          spec.resolution, RegionPair(0, 2), 2);
  // Normal from region 1 (above the plane) into region 2: -z.
  emitDisk(mesh, Vec3::Zero(), e1, e2, junction, rho, spec.resolution,
           RegionPair(1, 2), -ez);

  finishCluster(cluster, spec, r, report, "flat_interface");
  return cluster;
}

Cluster buildDisjointBalls(const ConfigurationSpec& spec, BuildReport* report) {
  if (spec.kind != ConfigKind::DisjointBalls) throw Error("spec kind mismatch");
  const std::size_t k = spec.volumes.size();
  if (k < 1 || k > 3) throw Error("disjoint_balls takes 1 to 3 volumes");
  std::vector<double> radii(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(spec.volumes[i] > 0)) {
      throw NonPositiveVolume("volumes must be positive");
    }
    radii[i] = std::cbrt(3.0 * spec.volumes[i] / (4.0 * kPi));
  }
  const bool tangent = spec.placement && spec.placement->tangent;
  std::vector<Vec3> centers(k);
  if (spec.placement && spec.placement->centers) {
    if (spec.placement->centers->size() != k) {
      throw Error("placement.centers count mismatch");
    }
    centers = *spec.placement->centers;
  } else {
    double x = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (i > 0) {
        const double gap = tangent ? 0.0 : 0.25 * (radii[i - 1] + radii[i]);
        x += radii[i - 1] + radii[i] + gap;
      }
      centers[i] = Vec3(x, 0, 0);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = (centers[i] - centers[j]).norm();
      const double sum = radii[i] + radii[j];
      if (d < sum - 1e-9 * sum) {
        throw OverlapError("balls " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " overlap");
      }
    }
  }

  Cluster cluster;
  cluster.k = static_cast<int>(k);
  cluster.target_volumes = spec.volumes;
  cluster.tolerances = toleranceProfile("default");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  for (std::size_t i = 0; i < k; ++i) {
    const int level = icosphereLevelForResolution(radii[i], spec.resolution);
    // When tangent, align a vertex with each contact direction so the
    // discrete surfaces actually touch.
    Vec3 toward = Vec3::UnitX();
    const Vec3* toward_ptr = nullptr;
    if (tangent && k > 1) {
      toward = (i == 0) ? Vec3(Vec3::UnitX()) : Vec3(-Vec3::UnitX());
      toward_ptr = &toward;
    }
    icosphere(cluster.mesh, centers[i], radii[i], level,
              RegionPair(0, static_cast<int>(i) + 1), toward_ptr);
  }
  finishCluster(cluster, spec, rmax, report, tangent ? "tangent" : "disjoint");
  return cluster;
}

Cluster buildBallPlusDoubleBubble(const ConfigurationSpec& spec,
                                  BuildReport* report) {
  if (spec.kind != ConfigKind::BallPlusDoubleBubble) {
    throw Error("spec kind mismatch");
  }
  if (spec.volumes.size() != 3) {
    throw Error("ball_plus_double_bubble takes three volumes");
  }
  ConfigurationSpec db_spec;
  db_spec.kind = ConfigKind::StandardDoubleBubble;
  db_spec.volumes = {spec.volumes[0], spec.volumes[1]};
  db_spec.resolution = spec.resolution;
  Cluster cluster = buildStandardDoubleBubble(db_spec, nullptr);
  const double r = solveDoubleBubbleRadius(spec.volumes[0]);

  if (!(spec.volumes[2] > 0)) throw NonPositiveVolume("ball volume");
  const double r3 = std::cbrt(3.0 * spec.volumes[2] / (4.0 * kPi));
  const Vec3 dir = (spec.placement && spec.placement->direction)
                       ? spec.placement->direction->normalized()
                       : Vec3(0, 0, -1);
  double gap = (spec.placement && spec.placement->gap >= 0)
                   ? spec.placement->gap
                   : 0.5 * r3;

  // Support vertex of the bubble in the requested direction; the contact
  // is snapped there so tangency is exact on the discrete surfaces.
  int support = -1;
  double best = -std::numeric_limits<double>::max();
  for (std::size_t vi = 0; vi < cluster.mesh.vertexCount(); ++vi) {
    const double s = dir.dot(cluster.mesh.vertices[vi]);
    if (s > best) {
      best = s;
      support = static_cast<int>(vi);
    }
  }
  const Vec3 vstar = cluster.mesh.vertices[support];
  const bool on_lobe1 = (vstar - Vec3(0, 0, r / 2)).norm() <
                        (vstar - Vec3(0, 0, -r / 2)).norm();
  const Vec3 lobe_center = on_lobe1 ? Vec3(0, 0, r / 2) : Vec3(0, 0, -r / 2);
  const Vec3 out = (vstar - lobe_center).normalized();
  if (gap == 0.0 && std::abs(vstar.z()) < 1e-9 * r) {
    throw TangencyOnInterface(
        "requested tangency touches the junction circle on the interface "
        "plane");
  }
  const Vec3 ball_center = vstar + (r3 + gap) * out;
  for (const Vec3& c : {Vec3(0, 0, r / 2), Vec3(0, 0, -r / 2)}) {
    if ((ball_center - c).norm() < r + r3 - 1e-9 * r) {
      throw OverlapError("ball placement overlaps the double bubble");
    }
  }
  const Vec3 toward = -out;
  const int level = icosphereLevelForResolution(r3, spec.resolution);
  icosphere(cluster.mesh, ball_center, r3, level, RegionPair(0, 3), &toward);

  cluster.k = 3;
  cluster.target_volumes = spec.volumes;
  finishCluster(cluster, spec, r, report, gap == 0.0 ? "tangent" : "disjoint");
  return cluster;
}

Cluster buildCluster(const ConfigurationSpec& spec, BuildReport* report) {
  switch (spec.kind) {
    case ConfigKind::DisjointBalls: return buildDisjointBalls(spec, report);
    case ConfigKind::StandardDoubleBubble:
      return buildStandardDoubleBubble(spec, report);
    case ConfigKind::BallPlusDoubleBubble:
      return buildBallPlusDoubleBubble(spec, report);
    case ConfigKind::LinedUpTriple: return buildLinedUpTriple(spec, report);
    case ConfigKind::StandardTriple: return buildStandardTriple(spec, report);
  }
  throw Error("unreachable");
}

}  // namespace bubbles
