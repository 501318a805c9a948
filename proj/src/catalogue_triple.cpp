#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bubbles/catalogue_detail.hpp"
#include "bubbles/solve.hpp"

namespace bubbles {

using namespace detail;

namespace {

// --- lined-up triple ------------------------------------------------------

// Arclength where the profile's tangent angle first crosses `target`,
// scanning from the bulge sample outward (forward or backward).
double psiCrossingFromBulge(const DelaunayProfile& p, double target,
                            bool forward) {
  const auto& v = p.samples;
  std::size_t i0 = 0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i].s) < best) {
      best = std::abs(v[i].s);
      i0 = i;
    }
  }
  auto refine = [&](std::size_t i, std::size_t j) {
    const double pa = v[i].psi - target, pb = v[j].psi - target;
    if (pa == 0) return v[i].s;
    const double w = pa / (pa - pb);
    return v[i].s + w * (v[j].s - v[i].s);
  };
  if (forward) {
    for (std::size_t i = i0; i + 1 < v.size(); ++i) {
      if ((v[i].psi - target) * (v[i + 1].psi - target) <= 0) {
        return refine(i, i + 1);
      }
    }
  } else {
    for (std::size_t i = i0; i > 0; --i) {
      if ((v[i].psi - target) * (v[i - 1].psi - target) <= 0) {
        return refine(i, i - 1);
      }
    }
  }
  throw VolumeOutOfRange(
      "Delaunay profile never reaches the 120-degree contact angle", 0, 0);
}

struct MiddlePiece {
  DelaunayProfile profile;
  double s_lo, s_hi;  // contact arclengths (psi = 60 and 120 degrees)
  double volume;
  double width;  // axial separation of the contact planes
};

// Middle cell of the parallel branch: CMC surface of revolution meeting
// both planes at 120 degrees with the contact circles pinned at radius
// sqrt(3)/2 * r (so the interface disks match the outer lobes). The mean
// curvature of the middle floats; it equals 2/r exactly on the sphere
// member and drifts off it elsewhere, which is what the geometry allows.
MiddlePiece solveParallelMiddle(double r, double lambda_m) {
  const double rim = std::sqrt(3.0) * r / 2.0;
  const double q = rim * std::sin(kPi / 3.0) - lambda_m * rim * rim / 2.0;
  const double shape = 2.0 * lambda_m * q;
  MiddlePiece piece;
  // Near the sphere member the profile pinches at the poles (arclength
  // pi/lambda from the bulge); start inside that and widen if the contact
  // angle is not reached (long unduloid pieces).
  double span = 0.9 * kPi / lambda_m;
  for (int attempt = 0;; ++attempt) {
    piece.profile =
        generateDelaunayProfile(lambda_m, shape, -span, span);
    try {
      piece.s_lo = psiCrossingFromBulge(piece.profile, kPi / 3.0, false);
      piece.s_hi = psiCrossingFromBulge(piece.profile, 2.0 * kPi / 3.0, true);
      break;
    } catch (const VolumeOutOfRange&) {
      if (attempt >= 2) throw;
      span *= 2.0;
    }
  }
  piece.volume = revolvedVolume(piece.profile, piece.s_lo, piece.s_hi);
  piece.width = piece.profile.zAt(piece.s_hi) - piece.profile.zAt(piece.s_lo);
  return piece;
}

struct LinedUpGeometry {
  Vec3 m1, m2;        // outward normals of the middle cell (unit)
  Vec3 f1_1, f1_2;    // rim in-plane frames (second axis is +Y)
  bool pinch = false; // point contact: rims share the vertex nearest L
  // Parallel branch only:
  bool parallel = false;
  MiddlePiece piece;
};

void emitSphericalBelt(LabeledMesh& mesh, const Vec3& center, double r,
                       const VertexStrip& rim1, const VertexStrip& rim2,
                       double resolution, RegionPair label) {
  const std::size_t face_begin = mesh.faceCount();
  const int N = static_cast<int>(rim1.size());
  // Meridian ladders between matched rim samples; the sample count follows
  // the local width so the belt stays well shaped down to a pinch cusp.
  auto ladder = [&](int k) {
    VertexStrip strip;
    strip.closed = false;
    const int i1 = rim1.idx[k], i2 = rim2.idx[k];
    if (i1 == i2) return VertexStrip::point(i1);
    const Vec3 d1 = (mesh.vertices[i1] - center) / r;
    const Vec3 d2 = (mesh.vertices[i2] - center) / r;
    const double omega = std::acos(std::clamp(d1.dot(d2), -1.0, 1.0));
    const int n =
        1 + std::max(1, static_cast<int>(std::llround(r * omega / resolution)));
    strip.idx.push_back(i1);
    strip.t.push_back(0.0);
    for (int i = 1; i + 1 < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      const Vec3 dir = (std::sin((1 - t) * omega) * d1 +
                        std::sin(t * omega) * d2) /
                       std::sin(omega);
      strip.idx.push_back(mesh.addVertex(center + r * dir.normalized()));
      strip.t.push_back(t);
    }
    strip.idx.push_back(i2);
    strip.t.push_back(1.0);
    return strip;
  };
  VertexStrip first = ladder(0);
  VertexStrip prev = first;
  for (int k = 1; k <= N; ++k) {
    VertexStrip cur = (k == N) ? first : ladder(k);
    zipStrips(mesh, prev, cur, label);
    prev = cur;
  }
  smoothPatchInterior(mesh, face_begin, mesh.faceCount(), [&](const Vec3& p) {
    return Vec3(center + r * (p - center).normalized());
  });
  orientFaces(mesh, face_begin, mesh.faceCount(),
              [&](const Vec3& c) { return Vec3(center - c); });
}

void emitRevolvedBelt(LabeledMesh& mesh, const MiddlePiece& piece, double rim,
                      double half_width, const VertexStrip& rim1,
                      const VertexStrip& rim2, double resolution,
                      RegionPair label) {
  const std::size_t face_begin = mesh.faceCount();
  const int N = static_cast<int>(rim1.size());
  const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY();
  const double z_mid =
      0.5 * (piece.profile.zAt(piece.s_lo) + piece.profile.zAt(piece.s_hi));
  const int nst = std::max(
      2, static_cast<int>(std::llround((piece.s_hi - piece.s_lo) / resolution)));
  VertexStrip prev = rim1;
  for (int j = 1; j <= nst; ++j) {
    VertexStrip ring;
    if (j == nst) {
      ring = rim2;
    } else {
      const double s =
          piece.s_lo + (piece.s_hi - piece.s_lo) * static_cast<double>(j) / nst;
      const double rho = piece.profile.radiusAt(s);
      const double z = piece.profile.zAt(s) - z_mid;
      ring = makeRing(mesh, ringPoints(Vec3(0, 0, z), e1, e2, rho, N));
    }
    zipStrips(mesh, prev, ring, label);
    prev = ring;
  }
  (void)rim;
  // project onto the profile surface: keep z, set the radius to rho(z)
  const double z_mid2 =
      0.5 * (piece.profile.zAt(piece.s_lo) + piece.profile.zAt(piece.s_hi));
  std::vector<std::pair<double, double>> z_to_rho;
  for (const auto& s : piece.profile.samples) {
    if (s.s >= piece.s_lo - 1e-12 && s.s <= piece.s_hi + 1e-12) {
      z_to_rho.push_back({s.z - z_mid2, s.radius});
    }
  }
  smoothPatchInterior(mesh, face_begin, mesh.faceCount(), [&](const Vec3& p) {
    const double z = std::clamp(p.z(), -half_width, half_width);
    double rho = z_to_rho.empty() ? p.head<2>().norm() : z_to_rho.front().second;
    for (std::size_t i = 0; i + 1 < z_to_rho.size(); ++i) {
      if (z >= z_to_rho[i].first && z <= z_to_rho[i + 1].first) {
        const double w = (z - z_to_rho[i].first) /
                         (z_to_rho[i + 1].first - z_to_rho[i].first);
        rho = (1 - w) * z_to_rho[i].second + w * z_to_rho[i + 1].second;
        break;
      }
    }
    if (z > z_to_rho.back().first) rho = z_to_rho.back().second;
    const double rxy = p.head<2>().norm();
    if (rxy == 0) return Vec3(rho, 0, z);
    return Vec3(p.x() / rxy * rho, p.y() / rxy * rho, z);
  });
  orientFaces(mesh, face_begin, mesh.faceCount(), [&](const Vec3& c) {
    return Vec3(Vec3(0, 0, c.z()) - c);  // toward the axis
  });
}

}  // namespace

Cluster buildLinedUpTriple(const ConfigurationSpec& spec, BuildReport* report) {
  if (spec.kind != ConfigKind::LinedUpTriple) throw Error("spec kind mismatch");
  if (spec.volumes.size() != 3) throw Error("lined_up_triple takes three volumes");
  for (double v : spec.volumes) {
    if (!(v > 0)) throw NonPositiveVolume("volumes must be positive");
  }
  const double v_out = spec.volumes[0];
  if (std::abs(spec.volumes[2] - v_out) > 1e-9 * v_out) {
    throw NonEqualVolumes(
        "lined-up outer volumes must be equal (one multiplier across the "
        "chain forces one lobe radius)");
  }
  const double v_mid = spec.volumes[1];
  const double r = solveDoubleBubbleRadius(v_out);
  const double rho = std::sqrt(3.0) * r / 2.0;
  const double v_star = linedUpSphericalMiddleVolume(r);
  const bool at_star = std::abs(v_mid - v_star) <= 1e-6 * v_star;

  LinedUpBranch branch = spec.branch;
  if (branch == LinedUpBranch::Auto) {
    if (at_star) {
      throw BranchAmbiguity(
          "middle volume " + std::to_string(v_mid) +
          " is attainable by the non-parallel, point-contact and parallel "
          "(sphere) branches; pass an explicit branch");
    }
    branch = LinedUpBranch::Parallel;
  }

  LinedUpGeometry geo;
  std::string branch_tag;
  double half_width = 0;
  if (branch == LinedUpBranch::NonParallel ||
      branch == LinedUpBranch::PointContact) {
    if (!at_star) {
      throw VolumeOutOfRange(
          "the spherical middle cell encloses exactly " +
              std::to_string(v_star) +
              " for these outer volumes (constant over the dihedral family)",
          v_star, v_star);
    }
    double opening = 60.0;
    if (branch == LinedUpBranch::NonParallel) {
      opening = spec.opening_deg.value_or(30.0);
      if (!(opening > 0.0 && opening < 60.0)) {
        throw Error("non-parallel opening angle must lie in (0, 60) degrees");
      }
      branch_tag = "non_parallel_sphere";
    } else {
      branch_tag = "point_contact";
      geo.pinch = true;
    }
    const double gamma = rad(90.0 - opening / 2.0);
    geo.m1 = Vec3(std::sin(gamma), 0, std::cos(gamma));
    geo.m2 = Vec3(-std::sin(gamma), 0, std::cos(gamma));
    geo.f1_1 = Vec3::UnitY().cross(geo.m1);
    geo.f1_2 = -Vec3::UnitY().cross(geo.m2);
  } else {
    // Parallel planes; solve the Delaunay shape for the middle volume.
    const double lam_lo = 1.02 / r;  // profile convexity margin
    double lam_hi = 4.0 / r;
    const double v_max = solveParallelMiddle(r, lam_lo).volume;
    if (v_mid > v_max) {
      throw VolumeOutOfRange("middle volume above the parallel family range",
                             0.0, v_max);
    }
    while (solveParallelMiddle(r, lam_hi).volume > v_mid) {
      lam_hi *= 2.0;
      if (lam_hi > 1e5 / r) {
        throw VolumeOutOfRange("middle volume below the parallel family range",
                               solveParallelMiddle(r, lam_hi).volume, v_max);
      }
    }
    const double lam = solveMonotone(
        [&](double lm) { return solveParallelMiddle(r, lm).volume / v_mid - 1.0; },
        lam_lo, lam_hi, 1e-11);
    geo.parallel = true;
    geo.piece = solveParallelMiddle(r, lam);
    half_width = geo.piece.width / 2.0;
    geo.m1 = Vec3(0, 0, -1);
    geo.m2 = Vec3(0, 0, 1);
    geo.f1_1 = Vec3::UnitX();
    geo.f1_2 = Vec3::UnitX();
    if (std::abs(geo.piece.profile.shape) < 1e-5) {
      branch_tag = "parallel_sphere";
    } else if (geo.piece.profile.shape > 0) {
      branch_tag = "parallel_unduloid";
    } else {
      branch_tag = "parallel_nodoid";
    }
  }

  Cluster cluster;
  cluster.k = 3;
  cluster.target_volumes = spec.volumes;
  cluster.tolerances = toleranceProfile("default");
  LabeledMesh& mesh = cluster.mesh;
  const int N = evenRingSize(2 * kPi * rho, spec.resolution);
  const Vec3 y = Vec3::UnitY();

  // Rim circles (the two junction loops), sampled so index N/2 sits nearest
  // the wedge line; at point contact that sample is shared.
  const Vec3 rim_center1 =
      geo.parallel ? Vec3(0, 0, -half_width) : Vec3(0.5 * r * geo.m1);
  const Vec3 rim_center2 =
      geo.parallel ? Vec3(0, 0, half_width) : Vec3(0.5 * r * geo.m2);
  VertexStrip rim1 = makeRing(mesh, ringPoints(rim_center1, geo.f1_1, y, rho, N));
  VertexStrip rim2;
  {
    std::vector<Vec3> pts = ringPoints(rim_center2, geo.f1_2, y, rho, N);
    rim2.closed = true;
    for (int k = 0; k < N; ++k) {
      if (geo.pinch && k == N / 2) {
        rim2.idx.push_back(rim1.idx[N / 2]);
      } else {
        rim2.idx.push_back(mesh.addVertex(pts[k]));
      }
      rim2.t.push_back(static_cast<double>(k) / N);
    }
  }

  // Outer lobes (regions 1 and 3) and interface disks.
  const double theta_max = 2.0 * kPi / 3.0;
  const Vec3 lobe1_center = rim_center1 + 0.5 * r * geo.m1;
  const Vec3 lobe2_center = rim_center2 + 0.5 * r * geo.m2;
  emitCap(mesh, lobe1_center, r, geo.m1, geo.f1_1, y, theta_max, rim1,
          spec.resolution, RegionPair(0, 1), 1);
  emitCap(mesh, lobe2_center, r, geo.m2, geo.f1_2, y, theta_max, rim2,
          spec.resolution, RegionPair(0, 3), 3);
  emitDisk(mesh, rim_center1, geo.f1_1, y, rim1, rho, spec.resolution,
           RegionPair(1, 2), -geo.m1);
  emitDisk(mesh, rim_center2, geo.f1_2, y, rim2, rho, spec.resolution,
           RegionPair(2, 3), geo.m2);

  // Middle cell lateral surface (region 2).
  if (geo.parallel) {
    emitRevolvedBelt(mesh, geo.piece, rho, half_width, rim1, rim2,
                     spec.resolution, RegionPair(0, 2));
  } else {
    emitSphericalBelt(mesh, Vec3::Zero(), r, rim1, rim2, spec.resolution,
                      RegionPair(0, 2));
  }
  if (geo.pinch) equalizeCornerRing(mesh, rim1.idx[N / 2]);

  finishCluster(cluster, spec, r, report, branch_tag);
  if (report) {
    if (geo.parallel) {
      report->middle_lambda = geo.piece.profile.lambda;
      report->middle_shape = geo.piece.profile.shape;
      report->wedge_opening_deg = 0;  // parallel planes
    } else {
      report->middle_lambda = 2.0 / r;
      report->middle_shape = 0;
      report->wedge_opening_deg =
          180.0 - deg(std::acos(std::clamp(geo.m1.dot(geo.m2), -1.0, 1.0)));
    }
  }
  return cluster;
}

// --- standard triple ------------------------------------------------------

namespace {

// Monotone [0,1] -> [0,1] map with endpoint derivative beta (< 3). Used to
// grade curve sampling so strips leave the chord endpoints with a common
// first step; the corner force of a balanced cone then cancels.
double hermiteRamp(double t, double beta) {
  return (3 - 2 * t) * t * t + beta * (2 * t * t * t - 3 * t * t + t);
}

// Region volume of the unit-radius standard triple: ball centered at
// distance 1/sqrt(3) from the wedge line, cut by the 120-degree wedge.
// Cross-section slice integral over the full ball height.
double unitStandardTripleRegionVolume() {
  static const double value = [] {
    const double d = 1.0 / std::sqrt(3.0);
    auto slice = [&](double z) {
      const double rho2 = 1.0 - z * z;
      if (rho2 <= 0) return 0.0;
      const double rho = std::sqrt(rho2);
      auto width = [&](double x) {
        const double dx = x - d;
        const double ydisk = std::sqrt(std::max(0.0, rho2 - dx * dx));
        return 2.0 * std::min(ydisk, std::sqrt(3.0) * x);
      };
      return integrate(width, std::max(0.0, d - rho), d + rho, 1e-12, 30);
    };
    return integrate(slice, -1.0, 1.0, 1e-11, 30);
  }();
  return value;
}

}  // namespace

Cluster buildStandardTriple(const ConfigurationSpec& spec, BuildReport* report) {
  if (spec.kind != ConfigKind::StandardTriple) throw Error("spec kind mismatch");
  if (spec.volumes.size() != 3) throw Error("standard_triple takes three volumes");
  const double v = spec.volumes[0];
  if (!(v > 0)) throw NonPositiveVolume("volumes must be positive");
  for (double vi : spec.volumes) {
    if (std::abs(vi - v) > 1e-9 * v) {
      throw NonEqualVolumes(
          "the standard triple bubble requires three equal volumes (equal "
          "radii balls in congruent wedges)");
    }
  }
  const double r = std::cbrt(v / unitStandardTripleRegionVolume());
  const double d = r / std::sqrt(3.0);
  const double h = r * std::sqrt(2.0 / 3.0);
  const double rho_arc = std::sqrt(3.0) * r / 2.0;

  Cluster cluster;
  cluster.k = 3;
  cluster.target_volumes = spec.volumes;
  cluster.tolerances = toleranceProfile("default");
  LabeledMesh& mesh = cluster.mesh;

  const double phi_e[3] = {kPi / 2, kPi / 2 + 2 * kPi / 3, kPi / 2 + 4 * kPi / 3};
  auto u_of = [](double phi) { return Vec3(std::cos(phi), std::sin(phi), 0); };

  // Junction chord on the common line.
  const double arc_len = rho_arc * 2.0 * std::abs(std::atan2(h, d / 2.0) - kPi);
  int n_m = std::max(
      5, static_cast<int>(std::llround(arc_len / spec.resolution)) + 1);
  VertexStrip chord;
  chord.closed = false;
  for (int k = 0; k < n_m; ++k) {
    const double z = -h + 2.0 * h * k / (n_m - 1);
    chord.idx.push_back(mesh.addVertex(Vec3(0, 0, z)));
    chord.t.push_back(static_cast<double>(k) / (n_m - 1));
  }
  const int x1 = chord.idx.front(), x2 = chord.idx.back();

  // Junction arcs, one per interface half-plane, sharing the chord endpoints.
  VertexStrip arcs[3];
  for (int e = 0; e < 3; ++e) {
    const Vec3 u = u_of(phi_e[e]);
    const double q_u = d / 2.0;
    const double psi1 = std::atan2(-h, -q_u);
    const double psi2 = -psi1;
    const double beta = 2 * h / (rho_arc * (psi2 - psi1));
    VertexStrip arc;
    arc.closed = false;
    for (int k = 0; k < n_m; ++k) {
      const double t = static_cast<double>(k) / (n_m - 1);
      if (k == 0) {
        arc.idx.push_back(x1);
      } else if (k == n_m - 1) {
        arc.idx.push_back(x2);
      } else {
        const double psi = psi1 + (psi2 - psi1) * hermiteRamp(t, beta);
        arc.idx.push_back(mesh.addVertex((q_u + rho_arc * std::cos(psi)) * u +
                                         Vec3(0, 0, rho_arc * std::sin(psi))));
      }
      arc.t.push_back(t);
    }
    arcs[e] = std::move(arc);
  }

  // Spherical patches: region i spans azimuths [phi_e[i], phi_e[i]+120].
  const int n_phi = std::max(
      4, static_cast<int>(std::llround(2 * kPi / 3 * r / spec.resolution)));
  for (int i = 0; i < 3; ++i) {
    const double phi_lo = phi_e[i];
    const double phi_b = phi_lo + kPi / 3;
    const Vec3 center = d * u_of(phi_b);
    const std::size_t face_begin = mesh.faceCount();
    VertexStrip prev = arcs[i];
    for (int j = 1; j <= n_phi; ++j) {
      VertexStrip strip;
      if (j == n_phi) {
        strip = arcs[(i + 1) % 3];
      } else {
        const double phi = phi_lo + 2 * kPi / 3 * static_cast<double>(j) / n_phi;
        const Vec3 u = u_of(phi);
        const double delta = phi - phi_b;
        const double q_u = d * std::cos(delta);
        const double rho_m =
            std::sqrt(r * r - d * d * std::sin(delta) * std::sin(delta));
        const double psi1 = std::atan2(-h, -q_u);
        const double psi2 = -psi1;
        const double beta = 2 * h / (rho_m * (psi2 - psi1));
        strip.closed = false;
        for (int k = 0; k < n_m; ++k) {
          const double t = static_cast<double>(k) / (n_m - 1);
          if (k == 0) {
            strip.idx.push_back(x1);
          } else if (k == n_m - 1) {
            strip.idx.push_back(x2);
          } else {
            const double psi = psi1 + (psi2 - psi1) * hermiteRamp(t, beta);
            strip.idx.push_back(mesh.addVertex((q_u + rho_m * std::cos(psi)) * u +
                                               Vec3(0, 0, rho_m * std::sin(psi))));
          }
          strip.t.push_back(t);
        }
      }
      zipStrips(mesh, prev, strip, RegionPair(0, i + 1));
      prev = strip;
    }
    // keep the graded corner neighborhoods as constructed
    const double guard = 6.0 * h / (n_m - 1);
    const Vec3 p1 = mesh.vertices[x1], p2 = mesh.vertices[x2];
    smoothPatchInterior(
        mesh, face_begin, mesh.faceCount(),
        [&](const Vec3& p) { return Vec3(center + r * (p - center).normalized()); },
        3,
        [p1, p2, guard](const Vec3& p) {
          return (p - p1).norm() < guard || (p - p2).norm() < guard;
        });
    orientFaces(mesh, face_begin, mesh.faceCount(),
                [&](const Vec3& c) { return Vec3(center - c); });
  }

  // Interface sheets: blend between the chord and each arc.
  const int region_of_plane[3][2] = {{1, 3}, {1, 2}, {2, 3}};
  const int nd = std::max(
      2, static_cast<int>(std::llround((d / 2 + rho_arc) / spec.resolution)));
  for (int e = 0; e < 3; ++e) {
    const int a = region_of_plane[e][0], b = region_of_plane[e][1];
    const std::size_t face_begin = mesh.faceCount();
    VertexStrip prev = chord;
    for (int j = 1; j <= nd; ++j) {
      VertexStrip ring;
      if (j == nd) {
        ring = arcs[e];
      } else {
        const double t = static_cast<double>(j) / nd;
        ring.closed = false;
        for (int k = 0; k < n_m; ++k) {
          if (k == 0) {
            ring.idx.push_back(x1);
          } else if (k == n_m - 1) {
            ring.idx.push_back(x2);
          } else {
            const Vec3 p = (1 - t) * mesh.vertices[chord.idx[k]] +
                           t * mesh.vertices[arcs[e].idx[k]];
            ring.idx.push_back(mesh.addVertex(p));
          }
          ring.t.push_back(static_cast<double>(k) / (n_m - 1));
        }
      }
      zipStrips(mesh, prev, ring, RegionPair(a, b));
      prev = ring;
    }
    const Vec3 n_e = Vec3::UnitZ().cross(u_of(phi_e[e]));
    smoothPatchInterior(mesh, face_begin, mesh.faceCount(), [&](const Vec3& p) {
      return Vec3(p - n_e * n_e.dot(p));
    });
    const Vec3 c_a = d * u_of(phi_e[a - 1] + kPi / 3);
    const Vec3 c_b = d * u_of(phi_e[b - 1] + kPi / 3);
    const Vec3 ref = n_e * (n_e.dot(c_b - c_a) > 0 ? 1.0 : -1.0);
    orientFaces(mesh, face_begin, mesh.faceCount(),
                [&](const Vec3&) { return ref; });
  }

  finishCluster(cluster, spec, r, report, "wedge_120");
  return cluster;
}

}  // namespace bubbles
