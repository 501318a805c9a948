#include "bubbles/meshing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace bubbles {

VertexStrip uniformStrip(const std::vector<int>& idx, bool closed) {
  VertexStrip s;
  s.idx = idx;
  s.closed = closed;
  const std::size_t n = idx.size();
  s.t.resize(n);
  if (n == 1) {
    s.t[0] = 0.0;
    return s;
  }
  const double denom = closed ? static_cast<double>(n)
                              : static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s.t[i] = static_cast<double>(i) / denom;
  return s;
}

namespace {

// Parameter of sample i, unwrapped past the end for closed strips.
double stripParam(const VertexStrip& s, std::size_t i) {
  const std::size_t n = s.size();
  if (i < n) return s.t[i];
  return s.t[i - n] + 1.0;
}

int stripIndex(const VertexStrip& s, std::size_t i) {
  return s.idx[i % s.size()];
}

}  // namespace

void zipStrips(LabeledMesh& mesh, const VertexStrip& a, const VertexStrip& b,
               RegionPair label) {
  auto emit = [&](int u, int v, int w) {
    if (u == v || v == w || u == w) return;
    mesh.addFace(u, v, w, label);
  };
  // Degenerate strip: fan from the point.
  if (a.size() == 1 || b.size() == 1) {
    const VertexStrip& ring = a.size() == 1 ? b : a;
    const int apex = a.size() == 1 ? a.idx[0] : b.idx[0];
    const std::size_t steps = ring.closed ? ring.size() : ring.size() - 1;
    for (std::size_t i = 0; i < steps; ++i) {
      emit(apex, stripIndex(ring, i), stripIndex(ring, i + 1));
    }
    return;
  }
  const std::size_t na = a.closed ? a.size() : a.size() - 1;
  const std::size_t nb = b.closed ? b.size() : b.size() - 1;
  std::size_t i = 0, j = 0;
  while (i < na || j < nb) {
    const bool advance_a =
        j >= nb ||
        (i < na && stripParam(a, i + 1) + stripParam(a, i) <=
                       stripParam(b, j + 1) + stripParam(b, j));
    if (advance_a) {
      emit(stripIndex(a, i), stripIndex(b, j), stripIndex(a, i + 1));
      ++i;
    } else {
      emit(stripIndex(a, i), stripIndex(b, j), stripIndex(b, j + 1));
      ++j;
    }
  }
  if (a.closed) {
    // Close the band (last quad back to the seam).
    emit(stripIndex(a, na), stripIndex(b, nb), stripIndex(a, 0));
  }
}

void orientFaces(LabeledMesh& mesh, std::size_t from, std::size_t to,
                 const std::function<Vec3(const Vec3&)>& reference) {
  for (std::size_t f = from; f < to; ++f) {
    const Vec3 n = mesh.faceAreaVector(f);
    if (n.dot(reference(mesh.faceCentroid(f))) < 0) {
      std::swap(mesh.faces[f][1], mesh.faces[f][2]);
    }
  }
}

void smoothPatchInterior(LabeledMesh& mesh, std::size_t from, std::size_t to,
                         const std::function<Vec3(const Vec3&)>& project,
                         int passes,
                         const std::function<bool(const Vec3&)>& frozen) {
  std::map<int, std::vector<int>> adj;
  std::map<int, int> touch_inside;
  for (std::size_t f = from; f < to; ++f) {
    const auto& t = mesh.faces[f];
    for (int i = 0; i < 3; ++i) {
      adj[t[i]].push_back(t[(i + 1) % 3]);
      adj[t[i]].push_back(t[(i + 2) % 3]);
      touch_inside[t[i]]++;
    }
  }
  std::set<int> boundary;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (f >= from && f < to) continue;
    for (int v : mesh.faces[f]) {
      if (touch_inside.count(v)) boundary.insert(v);
    }
  }
  // patch-border vertices (open patches) are boundary as well
  {
    std::map<std::pair<int, int>, int> edge_count;
    for (std::size_t f = from; f < to; ++f) {
      const auto& t = mesh.faces[f];
      for (int i = 0; i < 3; ++i) {
        const int a = t[i], b = t[(i + 1) % 3];
        ++edge_count[std::minmax(a, b)];
      }
    }
    for (const auto& [e, c] : edge_count) {
      if (c == 1) {
        boundary.insert(e.first);
        boundary.insert(e.second);
      }
    }
  }
  for (int pass = 0; pass < passes; ++pass) {
    std::map<int, Vec3> next;
    for (const auto& [v, nbrs] : adj) {
      if (boundary.count(v)) continue;
      if (frozen && frozen(mesh.vertices[v])) continue;
      Vec3 acc = Vec3::Zero();
      for (int u : nbrs) acc += mesh.vertices[u];
      next[v] = project(acc / static_cast<double>(nbrs.size()));
    }
    for (const auto& [v, p] : next) mesh.vertices[v] = p;
  }
}

void equalizeCornerRing(LabeledMesh& mesh, int corner) {
  // The leading force defect of a balanced cone vertex depends only on its
  // neighbors along the junction curves (each patch fan's force telescopes
  // to its two endpoints). Equalize those distances; leave fan interiors.
  EdgeIncidence inc = buildEdgeIncidence(mesh);
  std::vector<int> curve_neighbors;
  for (const auto& [e, fs] : inc) {
    if (fs.size() < 3) continue;
    if (e.a == corner) curve_neighbors.push_back(e.b);
    if (e.b == corner) curve_neighbors.push_back(e.a);
  }
  if (curve_neighbors.empty()) return;
  const Vec3 apex = mesh.vertices[corner];
  double eps = std::numeric_limits<double>::max();
  for (int v : curve_neighbors) {
    eps = std::min(eps, (mesh.vertices[v] - apex).norm());
  }
  if (!(eps > 0)) return;
  for (int v : curve_neighbors) {
    const Vec3 d = mesh.vertices[v] - apex;
    const double len = d.norm();
    if (len > 0) mesh.vertices[v] = apex + d * (eps / len);
  }
}

void basisFromAxis(const Vec3& axis, Vec3& e1, Vec3& e2) {
  Vec3 h = std::abs(axis.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  e1 = axis.cross(h).normalized();
  e2 = axis.cross(e1);
}

std::vector<Vec3> sampleCircle(const Vec3& center, const Vec3& axis,
                               double radius, int n) {
  Vec3 e1, e2;
  basisFromAxis(axis.normalized(), e1, e2);
  std::vector<Vec3> out(n);
  for (int k = 0; k < n; ++k) {
    // Phase: sample n/2 lands exactly at azimuth pi (shared pinch points).
    const double phi = 2.0 * kPi * k / n + (n % 2 ? kPi / n : 0.0);
    out[k] = center + radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }
  return out;
}

int icosphereLevelForResolution(double radius, double resolution) {
  // Icosahedron edge on the unit sphere is ~1.0515; each level halves it.
  int level = 0;
  double edge = 1.0514622242 * radius;
  while (edge > resolution && level < 7) {
    edge *= 0.5;
    ++level;
  }
  return level;
}

IcosphereResult icosphere(LabeledMesh& mesh, const Vec3& center, double radius,
                          int level, RegionPair label,
                          const Vec3* vertex_toward) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double len = Vec3(0, 1, phi).norm();
  std::vector<Vec3> vs = {
      {0, 1, phi},  {0, -1, phi},  {0, 1, -phi}, {0, -1, -phi},
      {1, phi, 0},  {-1, phi, 0},  {1, -phi, 0}, {-1, -phi, 0},
      {phi, 0, 1},  {phi, 0, -1},  {-phi, 0, 1}, {-phi, 0, -1}};
  for (auto& v : vs) v /= len;
  std::vector<std::array<int, 3>> fs = {
      {0, 1, 8},  {0, 8, 4},  {0, 4, 5},  {0, 5, 10}, {0, 10, 1},
      {1, 6, 8},  {8, 6, 9},  {8, 9, 4},  {4, 9, 2},  {4, 2, 5},
      {5, 2, 11}, {5, 11, 10}, {10, 11, 7}, {10, 7, 1}, {1, 7, 6},
      {3, 9, 6},  {3, 2, 9},  {3, 11, 2}, {3, 7, 11}, {3, 6, 7}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int u, int v) {
      auto key = std::minmax(u, v);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = (vs[u] + vs[v]).normalized();
      vs.push_back(m);
      int id = static_cast<int>(vs.size()) - 1;
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(fs.size() * 4);
    for (const auto& f : fs) {
      int m01 = mid(f[0], f[1]), m12 = mid(f[1], f[2]), m20 = mid(f[2], f[0]);
      next.push_back({f[0], m01, m20});
      next.push_back({m01, f[1], m12});
      next.push_back({m20, m12, f[2]});
      next.push_back({m01, m12, m20});
    }
    fs = std::move(next);
  }
  // Optional rotation aligning vertex 0 with the requested direction.
  Mat3 R = Mat3::Identity();
  if (vertex_toward && vertex_toward->norm() > 0) {
    const Vec3 from = vs[0];
    const Vec3 to = vertex_toward->normalized();
    const Vec3 axis = from.cross(to);
    const double s = axis.norm(), c = from.dot(to);
    if (s > 1e-15) {
      R = Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
    } else if (c < 0) {
      Vec3 e1, e2;
      basisFromAxis(from, e1, e2);
      R = Eigen::AngleAxisd(kPi, e1).toRotationMatrix();
    }
  }
  IcosphereResult res;
  res.face_begin = mesh.faceCount();
  const int base = static_cast<int>(mesh.vertexCount());
  for (const auto& v : vs) mesh.addVertex(center + radius * (R * v));
  res.apex_vertex = base;
  for (const auto& f : fs) {
    mesh.addFace(base + f[0], base + f[1], base + f[2], label);
  }
  res.face_end = mesh.faceCount();
  orientFaces(mesh, res.face_begin, res.face_end, [&](const Vec3& c) {
    return label.lo == 0 ? Vec3(center - c) : Vec3(c - center);
  });
  return res;
}

}  // namespace bubbles
