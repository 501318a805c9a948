#ifndef BUBBLES_CATALOGUE_DETAIL_HPP
#define BUBBLES_CATALOGUE_DETAIL_HPP

// Internal helpers shared by the catalogue translation units.

#include "bubbles/catalogue.hpp"
#include "bubbles/meshing.hpp"

namespace bubbles::detail {

int evenRingSize(double circumference, double resolution);

VertexStrip makeRing(LabeledMesh& mesh, const std::vector<Vec3>& pts);

std::vector<Vec3> ringPoints(const Vec3& center, const Vec3& e1, const Vec3& e2,
                             double radius, int n);

// Spherical cap of the sphere (center, r) around apex direction `axis`,
// polar range (0, theta_max], zipped onto the existing boundary ring which
// must be sampled at azimuths 2*pi*k/N in the (e1, e2) frame.
void emitCap(LabeledMesh& mesh, const Vec3& center, double r, const Vec3& axis,
             const Vec3& e1, const Vec3& e2, double theta_max,
             const VertexStrip& boundary, double resolution, RegionPair label,
             int region);

// Flat disk with the given outer boundary ring (same sampling convention).
void emitDisk(LabeledMesh& mesh, const Vec3& center, const Vec3& e1,
              const Vec3& e2, const VertexStrip& boundary, double radius,
              double resolution, RegionPair label, const Vec3& normal_ref);

void applyPlacementMotion(LabeledMesh& mesh, const Placement& placement);

void finishCluster(Cluster& cluster, const ConfigurationSpec& spec, double r,
                   BuildReport* report, const std::string& branch);

}  // namespace bubbles::detail

#endif
