#ifndef BUBBLES_DELAUNAY_HPP
#define BUBBLES_DELAUNAY_HPP

#include <vector>

#include "bubbles/types.hpp"

namespace bubbles {

enum class DelaunayKind { Sphere, Unduloid, Nodoid, Cylinder };

// One profile sample: arclength, distance from the axis, axial coordinate,
// and the tangent angle psi (radius' = cos psi, z' = sin psi).
struct DelaunaySample {
  double s;
  double radius;
  double z;
  double psi;
};

// Meridian profile of a constant-mean-curvature surface of revolution,
// H = sum of the principal curvatures: psi' + sin(psi)/radius = lambda.
// The shape parameter is b = 2*lambda*Q with the conserved quantity
// Q = radius*sin(psi) - lambda*radius^2/2: b = 0 gives the sphere,
// b in (0,1) unduloids, b = 1 the cylinder, b < 0 nodoids.
struct DelaunayProfile {
  DelaunayKind kind;
  double lambda = 0;
  double shape = 0;
  std::vector<DelaunaySample> samples;
  double cmc_residual_max = 0;  // |psi'_fd + sin(psi)/r - lambda| over samples

  // Linear interpolation helpers on the sampled arclength grid.
  double radiusAt(double s) const;
  double zAt(double s) const;
  double psiAt(double s) const;
  // First s in [samples.front().s, samples.back().s] with psi = target,
  // scanning from the start; throws if never reached.
  double arclengthAtPsi(double target_psi) const;
};

// Integrates the profile over the arclength span [s_min, s_max] from the
// bulge (psi = pi/2, the larger radius root, z = 0) at s = 0. Samples are
// uniformly spaced; the CMC residual is evaluated with finite differences
// of the sampled psi and must come out <= 1e-8 away from the axis.
DelaunayProfile generateDelaunayProfile(double lambda, double shape,
                                        double s_min, double s_max,
                                        double max_ds = 0.0);

// Volume of the solid of revolution between the profile's z(s0) and z(s1)
// (requires z monotone on [s0, s1]).
double revolvedVolume(const DelaunayProfile& p, double s0, double s1);

}  // namespace bubbles

#endif
