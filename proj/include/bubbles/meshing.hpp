#ifndef BUBBLES_MESHING_HPP
#define BUBBLES_MESHING_HPP

#include <functional>
#include <vector>

#include "bubbles/mesh.hpp"

namespace bubbles {

// A sampled boundary curve: vertex indices plus a monotone parameter in
// [0, 1]. Closed strips wrap around (t of the last sample < 1); open strips
// run endpoint to endpoint (t.front() == 0, t.back() == 1). A strip may
// degenerate to a single vertex (apex, disk center, pinch point).
struct VertexStrip {
  std::vector<int> idx;
  std::vector<double> t;
  bool closed = false;

  static VertexStrip point(int v) { return {{v}, {0.0}, false}; }
  std::size_t size() const { return idx.size(); }
};

// Evenly parametrized strip over existing indices.
VertexStrip uniformStrip(const std::vector<int>& idx, bool closed);

// Triangulate the band between two strips by merging them along their
// parameters. Degenerate triangles (repeated indices) are skipped, which
// handles strips sharing endpoints or pinch vertices. The winding is
// (a_i, b_j, ...) -> fix orientation afterwards with orientFaces.
void zipStrips(LabeledMesh& mesh, const VertexStrip& a, const VertexStrip& b,
               RegionPair label);

// Flip face windings in [from, to) so normals align with reference
// directions (the analytic normal of the patch being emitted).
void orientFaces(LabeledMesh& mesh, std::size_t from, std::size_t to,
                 const std::function<Vec3(const Vec3& centroid)>& reference);

// Tangential Jacobi smoothing of the patch interior: each interior vertex
// moves to the mean of its patch neighbors and is projected back onto the
// analytic surface. Vertices touched by faces outside [from, to) (junction
// rings, shared boundaries) stay put.
void smoothPatchInterior(LabeledMesh& mesh, std::size_t from, std::size_t to,
                         const std::function<Vec3(const Vec3&)>& project,
                         int passes = 3,
                         const std::function<bool(const Vec3&)>& frozen = {});

// Pull every 1-ring neighbor of a cone vertex to the same distance from it
// (the smallest occurring one). The leading discrete force defect of a
// balanced cone is proportional to the spread of those distances; this
// keeps singular vertices (chord endpoints, pinch points) quiet.
void equalizeCornerRing(LabeledMesh& mesh, int corner);

// Deterministic orthonormal basis completing `axis` (unit).
void basisFromAxis(const Vec3& axis, Vec3& e1, Vec3& e2);

// n samples of the circle around `axis` through angle range; closed circles
// sample [0, 2pi) with phase so that sample floor(n/2) sits at azimuth pi.
std::vector<Vec3> sampleCircle(const Vec3& center, const Vec3& axis,
                               double radius, int n);

// Icosphere of given subdivision level appended to the mesh; faces carry
// `label` with normals pointing from label.lo into label.hi (inward for a
// bubble labeled {0, i}). Optionally rotate so a vertex lies exactly along
// `vertex_toward` from the center.
struct IcosphereResult {
  std::size_t face_begin, face_end;
  int apex_vertex;  // vertex along vertex_toward (or the default +Y one)
};
IcosphereResult icosphere(LabeledMesh& mesh, const Vec3& center, double radius,
                          int level, RegionPair label,
                          const Vec3* vertex_toward = nullptr);

int icosphereLevelForResolution(double radius, double resolution);

}  // namespace bubbles

#endif
