#ifndef BUBBLES_TESTS_ORACLES_HPP
#define BUBBLES_TESTS_ORACLES_HPP

// Test-only oracles, independent of the library code paths they check.

#include <functional>

#include "bubbles/mesh.hpp"
#include "bubbles/rng.hpp"

namespace bubbles::oracles {

// Monte-Carlo point-in-mesh volume of one region (ray-parity against the
// region's boundary triangles, 2D-grid accelerated). Returns the estimate
// and its standard error.
struct McVolume {
  double volume;
  double sigma;
};
McVolume monteCarloMeshVolume(const LabeledMesh& mesh, int region,
                              std::size_t samples, std::uint64_t seed);

// Monte-Carlo volume of an analytic region given by a predicate, sampled
// in the box [lo, hi].
McVolume monteCarloPredicateVolume(const std::function<bool(const Vec3&)>& in,
                                   const Vec3& lo, const Vec3& hi,
                                   std::size_t samples, std::uint64_t seed);

// Adaptive-Simpson slice integral of the 120-degree cut ball: cross
// sections pi (r^2 - z^2) from -r/2 to r. Independent of the closed form.
double cutBallVolumeQuadrature(double r);

// Ellipsoid (a, b, c): integral of 1/H over the surface (H = sum of the
// principal curvatures) by tensor Gauss-Legendre quadrature, plus the area.
struct EllipsoidHk {
  double integral_inv_H;
  double area;
  double volume;
};
EllipsoidHk ellipsoidInverseCurvatureIntegral(double a, double b, double c,
                                              int order = 192);

// Central finite difference of f with respect to coordinate `coord` of
// vertex `v` of the mesh.
double finiteDifference(const LabeledMesh& mesh,
                        const std::function<double(const LabeledMesh&)>& f,
                        int v, int coord, double step);

// Closed-form icosahedron volume for edge length a.
double icosahedronVolume(double edge);

// Deterministic small random test meshes (perturbed icospheres with valid
// closed-region structure).
LabeledMesh randomClosedMesh(std::uint64_t seed, int max_level = 1);

}  // namespace bubbles::oracles

#endif
