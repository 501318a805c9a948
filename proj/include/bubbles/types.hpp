#ifndef BUBBLES_TYPES_HPP
#define BUBBLES_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace bubbles {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg(double rad) { return rad * 180.0 / kPi; }
inline double rad(double deg) { return deg * kPi / 180.0; }

// Named numeric tolerances used by verification and classification.
// Angle/residual tolerances are calibrated for meshes at resolution ~r/20
// and scale roughly linearly with edge length.
struct ToleranceProfile {
  std::string name = "default";
  double angle_deg = 1.0;        // junction dihedral deviation from 120 deg
  double multiplier_rel = 0.02;  // relative spread of fitted lambdas
  double residual_rel = 0.02;    // stationarity residual bound
  double volume_rel = 0.005;     // achieved vs target volume
  double fit_rms_rel = 0.005;    // sphere/plane fit RMS relative to radius
  double flat_deg = 2.0;         // tangent-cone half-space detection
  double tangency_rel = 1e-3;    // surface distance vs min radius
  double convexity_rel = 1e-6;   // supporting-plane slack vs diameter
};

ToleranceProfile toleranceProfile(const std::string& name);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mesh / measure errors
struct OpenSurface : Error { using Error::Error; };
struct OrientationError : Error { using Error::Error; };
struct InvalidValence : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };
struct MeshDegeneracy : Error { using Error::Error; };

// Constructor errors
struct NonPositiveVolume : Error { using Error::Error; };
struct NonEqualVolumes : Error { using Error::Error; };
struct ResolutionTooCoarse : Error { using Error::Error; };
struct OverlapError : Error { using Error::Error; };
struct TangencyOnInterface : Error { using Error::Error; };
struct BranchAmbiguity : Error { using Error::Error; };

struct VolumeOutOfRange : Error {
  double feasible_lo;
  double feasible_hi;
  VolumeOutOfRange(const std::string& what, double lo, double hi)
      : Error(what), feasible_lo(lo), feasible_hi(hi) {}
};

// Delaunay profile errors
struct IntegrationFailure : Error { using Error::Error; };
struct PinchOff : Error { using Error::Error; };

// Analysis errors
struct NonConvexInput : Error { using Error::Error; };
struct CurvatureUnavailable : Error { using Error::Error; };
struct ConvexityViolation : Error { using Error::Error; };
struct UnsupportedK : Error { using Error::Error; };

// IO errors
struct FormatError : Error { using Error::Error; };

}  // namespace bubbles

#endif
