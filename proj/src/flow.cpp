#include "bubbles/flow.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace bubbles {

GradientField projectVolumePreserving(const GradientField& area_grad,
                                      const std::vector<GradientField>& vol_grads,
                                      bool* rank_deficient) {
  const int k = static_cast<int>(vol_grads.size());
  if (k == 0) return area_grad;
  for (const auto& gv : vol_grads) {
    if (fieldNorm(gv) == 0) throw Error("volume gradient vanishes");
  }
  Eigen::MatrixXd M(k, k);
  Eigen::VectorXd b(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      M(i, j) = M(j, i) = fieldDot(vol_grads[i], vol_grads[j]);
    }
    b(i) = fieldDot(area_grad, vol_grads[i]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (rank_deficient) {
    *rank_deficient = svd.singularValues()(k - 1) <=
                      1e-12 * svd.singularValues()(0);
  }
  svd.setThreshold(1e-12);
  const Eigen::VectorXd c = svd.solve(b);
  GradientField out = area_grad;
  for (int i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < out.size(); ++v) {
      out[v] -= c(i) * vol_grads[i][v];
    }
  }
  return out;
}

namespace {

std::vector<double> dualAreas(const LabeledMesh& mesh) {
  std::vector<double> dual(mesh.vertexCount(), 0.0);
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const double a = mesh.faceArea(f) / 3.0;
    for (int i = 0; i < 3; ++i) dual[mesh.faces[f][i]] += a;
  }
  return dual;
}

double minFaceArea(const LabeledMesh& mesh) {
  double m = std::numeric_limits<double>::max();
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    m = std::min(m, mesh.faceArea(f));
  }
  return m;
}

// Newton iteration on the volume constraints along mass-normalized volume
// gradient directions. Returns false when it cannot reach the tolerance.
bool restoreVolumes(LabeledMesh& mesh, const std::vector<double>& targets,
                    double rel_tol) {
  const int k = static_cast<int>(targets.size());
  for (int iter = 0; iter < 30; ++iter) {
    Eigen::VectorXd err(k);
    double worst = 0;
    for (int i = 0; i < k; ++i) {
      const double v = computeVolumeUnchecked(mesh, i + 1);
      err(i) = targets[i] - v;
      worst = std::max(worst, std::abs(err(i)) / targets[i]);
    }
    if (worst <= rel_tol) return true;
    std::vector<GradientField> gv;
    gv.reserve(k);
    for (int i = 1; i <= k; ++i) gv.push_back(volumeGradient(mesh, i));
    const std::vector<double> dual = dualAreas(mesh);
    std::vector<GradientField> dirs(k, GradientField(mesh.vertexCount()));
    for (int i = 0; i < k; ++i) {
      for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
        dirs[i][v] = dual[v] > 0 ? Vec3(gv[i][v] / dual[v]) : Vec3::Zero();
      }
    }
    Eigen::MatrixXd M(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) M(i, j) = fieldDot(gv[i], dirs[j]);
    }
    Eigen::VectorXd c = M.fullPivLu().solve(err);
    if (!c.allFinite()) return false;
    for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
      for (int i = 0; i < k; ++i) mesh.vertices[v] += c(i) * dirs[i][v];
    }
  }
  return false;
}

// --- remeshing -------------------------------------------------------------

// Split every edge longer than 4/3 of the target length. Junction edges are
// split consistently across all incident faces; labels are inherited.
void splitLongEdges(LabeledMesh& mesh, double target_len) {
  const double limit = 4.0 / 3.0 * target_len;
  EdgeIncidence inc = buildEdgeIncidence(mesh);
  std::vector<std::pair<double, EdgeKey>> longest;
  for (const auto& [e, fs] : inc) {
    const double len = (mesh.vertices[e.a] - mesh.vertices[e.b]).norm();
    if (len > limit) longest.push_back({len, e});
  }
  std::sort(longest.begin(), longest.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    if (x.second.a != y.second.a) return x.second.a < y.second.a;
    return x.second.b < y.second.b;
  });
  std::vector<char> face_dead(mesh.faceCount(), 0);
  for (const auto& [len, e] : longest) {
    auto it = inc.find(e);
    if (it == inc.end()) continue;
    bool alive = true;
    for (int f : it->second) {
      if (f >= static_cast<int>(face_dead.size()) || face_dead[f]) {
        alive = false;
      }
    }
    if (!alive) continue;
    const int mid =
        mesh.addVertex(0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]));
    for (int f : it->second) {
      face_dead[f] = 1;
      const auto t = mesh.faces[f];
      const RegionPair label = mesh.labels[f];
      // two replacement faces with mid on the split edge, windings kept
      std::array<int, 3> f1 = t, f2 = t;
      for (int i = 0; i < 3; ++i) {
        if (f1[i] == e.b) f1[i] = mid;
        if (f2[i] == e.a) f2[i] = mid;
      }
      mesh.addFace(f1[0], f1[1], f1[2], label);
      mesh.addFace(f2[0], f2[1], f2[2], label);
      face_dead.push_back(0);
      face_dead.push_back(0);
    }
  }
  // compact
  LabeledMesh out;
  out.vertices = std::move(mesh.vertices);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (f < face_dead.size() && face_dead[f]) continue;
    out.faces.push_back(mesh.faces[f]);
    out.labels.push_back(mesh.labels[f]);
  }
  mesh = std::move(out);
}

// Flip interior patch edges (valence 2, same label both sides, endpoints
// not on junctions) when the flip improves the worse aspect ratio.
void flipEdges(LabeledMesh& mesh) {
  EdgeIncidence inc = buildEdgeIncidence(mesh);
  std::vector<char> junction_vertex(mesh.vertexCount(), 0);
  for (const auto& [e, fs] : inc) {
    if (fs.size() == 3) {
      junction_vertex[e.a] = 1;
      junction_vertex[e.b] = 1;
    }
  }
  auto quality = [&](int a, int b, int c) {
    const Vec3& pa = mesh.vertices[a];
    const Vec3& pb = mesh.vertices[b];
    const Vec3& pc = mesh.vertices[c];
    const double area = 0.5 * (pb - pa).cross(pc - pa).norm();
    const double l2 = (pb - pa).squaredNorm() + (pc - pb).squaredNorm() +
                      (pa - pc).squaredNorm();
    return l2 > 0 ? area / l2 : 0.0;  // scale-free, larger is better
  };
  std::vector<std::pair<EdgeKey, std::pair<int, int>>> candidates;
  for (const auto& [e, fs] : inc) {
    if (fs.size() != 2) continue;
    if (junction_vertex[e.a] || junction_vertex[e.b]) continue;
    if (!(mesh.labels[fs[0]] == mesh.labels[fs[1]])) continue;
    candidates.push_back({e, {fs[0], fs[1]}});
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    if (x.first.a != y.first.a) return x.first.a < y.first.a;
    return x.first.b < y.first.b;
  });
  std::vector<char> face_touched(mesh.faceCount(), 0);
  std::unordered_map<EdgeKey, char, EdgeKeyHash> created;
  for (const auto& [e, fpair] : candidates) {
    const auto [fa, fb] = fpair;
    if (face_touched[fa] || face_touched[fb]) continue;
    auto opposite = [&](int f) {
      for (int i = 0; i < 3; ++i) {
        const int v = mesh.faces[f][i];
        if (v != e.a && v != e.b) return v;
      }
      return -1;
    };
    const int oa = opposite(fa), ob = opposite(fb);
    if (oa < 0 || ob < 0 || oa == ob) continue;
    if (inc.count(EdgeKey(oa, ob)) || created.count(EdgeKey(oa, ob))) {
      continue;  // flip would duplicate an edge
    }
    const double before =
        std::min(quality(e.a, e.b, oa), quality(e.a, e.b, ob));
    const double after =
        std::min(quality(oa, ob, e.a), quality(oa, ob, e.b));
    if (after <= 1.05 * before) continue;
    // Preserve orientation: walk fa's winding to place the new diagonal.
    const auto& ta = mesh.faces[fa];
    int ia = 0;
    while (ta[ia] != oa) ++ia;
    const int na = ta[(ia + 1) % 3];  // first edge vertex after oa in winding
    mesh.faces[fa] = {oa, na, ob};
    mesh.faces[fb] = {ob, (na == e.a ? e.b : e.a), oa};
    created[EdgeKey(oa, ob)] = 1;
    face_touched[fa] = face_touched[fb] = 1;
  }
}

}  // namespace

FlowResult evolve(const Cluster& cluster, const FlowParams& params) {
  if (!(params.initial_step > 0)) throw Error("initial_step must be positive");
  if (!(params.convergence_residual_rel > 0)) {
    throw Error("convergence_residual_rel must be positive");
  }
  for (double v : cluster.target_volumes) {
    if (!(v > 0)) throw NonPositiveVolume("target volumes must be positive");
  }
  FlowResult result;
  result.cluster = cluster;
  LabeledMesh& mesh = result.cluster.mesh;
  validateMesh(mesh);
  const int k = cluster.k;
  const double scale = std::cbrt(std::abs(computeVolumeUnchecked(mesh, 1)));
  const double degenerate_area = 1e-14 * scale * scale;

  auto record = [&](int step, double residual_rel, double tau) {
    FlowTraceRow row;
    row.step = step;
    row.area = totalArea(mesh);
    row.residual_rel = residual_rel;
    row.step_size = tau;
    for (int i = 0; i < k; ++i) {
      row.vol_err.push_back(
          (computeVolumeUnchecked(mesh, i + 1) - cluster.target_volumes[i]) /
          cluster.target_volumes[i]);
    }
    result.trace.push_back(std::move(row));
  };

  auto residualOf = [&](const LabeledMesh& m, GradientField* dir_out) -> double {
    const GradientField ga = areaGradient(m);
    std::vector<GradientField> gv;
    for (int i = 1; i <= k; ++i) gv.push_back(volumeGradient(m, i));
    GradientField proj = projectVolumePreserving(ga, gv);
    const double ga_norm = fieldNorm(ga);
    const double rel = ga_norm > 0 ? fieldNorm(proj) / ga_norm : 0.0;
    if (dir_out) *dir_out = std::move(proj);
    return rel;
  };

  double tau = params.initial_step;
  double residual_rel = 0;
  try {
    residual_rel = residualOf(mesh, nullptr);
  } catch (const DegenerateTriangle&) {
    result.status = FlowStatus::MeshDegeneracy;
    record(0, 0.0, 0.0);
    return result;
  }
  record(0, residual_rel, 0.0);
  result.status = FlowStatus::MaxSteps;

  int accepted = 0;
  for (int step = 1; step <= params.max_steps; ++step) {
    if (residual_rel <= params.convergence_residual_rel) {
      result.status = FlowStatus::Converged;
      break;
    }
    GradientField dir;
    try {
      residualOf(mesh, &dir);
    } catch (const DegenerateTriangle&) {
      result.status = FlowStatus::MeshDegeneracy;
      break;
    }
    const std::vector<double> dual = dualAreas(mesh);
    for (std::size_t v = 0; v < mesh.vertexCount(); ++v) {
      dir[v] = dual[v] > 0 ? Vec3(dir[v] / dual[v]) : Vec3::Zero();
    }
    const double area_before = totalArea(mesh);
    bool stepped = false;
    while (true) {
      LabeledMesh trial = mesh;
      for (std::size_t v = 0; v < trial.vertexCount(); ++v) {
        trial.vertices[v] -= tau * scale * dir[v];
      }
      bool ok = minFaceArea(trial) > degenerate_area &&
                restoreVolumes(trial, cluster.target_volumes,
                               params.volume_projection_tol) &&
                minFaceArea(trial) > degenerate_area;
      double area_after = ok ? totalArea(trial) : 0.0;
      if (ok && (params.step_rule == FlowParams::StepRule::Fixed ||
                 area_after <= area_before * (1 + 1e-14))) {
        mesh = std::move(trial);
        stepped = true;
        if (params.step_rule == FlowParams::StepRule::Backtracking) {
          tau = std::min(tau * 1.5, 100 * params.initial_step);
        }
        break;
      }
      if (params.step_rule == FlowParams::StepRule::Fixed) break;
      tau *= 0.5;
      if (tau < 1e-12 * params.initial_step) break;
    }
    if (!stepped) {
      // no admissible descent step; report the best iterate
      break;
    }
    ++accepted;
    if (params.remesh_interval > 0 && accepted % params.remesh_interval == 0) {
      splitLongEdges(mesh, 2.0 * std::sqrt(totalArea(mesh) / mesh.faceCount()));
      flipEdges(mesh);
      if (!restoreVolumes(mesh, cluster.target_volumes,
                          params.volume_projection_tol)) {
        result.status = FlowStatus::MeshDegeneracy;
        break;
      }
    }
    try {
      residual_rel = residualOf(mesh, nullptr);
    } catch (const DegenerateTriangle&) {
      result.status = FlowStatus::MeshDegeneracy;
      break;
    }
    record(step, residual_rel, tau);
    if (residual_rel <= params.convergence_residual_rel) {
      result.status = FlowStatus::Converged;
      break;
    }
  }
  if (params.max_steps == 0) result.status = FlowStatus::MaxSteps;
  return result;
}

void writeTraceCsv(std::ostream& os, const std::vector<FlowTraceRow>& trace) {
  const std::size_t k = trace.empty() ? 0 : trace.front().vol_err.size();
  os << "step,area,residual_rel";
  for (std::size_t i = 1; i <= k; ++i) os << ",vol_err_" << i;
  os << ",step_size\n";
  char buf[64];
  for (const auto& row : trace) {
    os << row.step;
    auto put = [&](double v) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      os << buf;
    };
    put(row.area);
    put(row.residual_rel);
    for (double e : row.vol_err) put(e);
    put(row.step_size);
    os << "\n";
  }
}

}  // namespace bubbles
