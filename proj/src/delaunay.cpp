#include "bubbles/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "bubbles/solve.hpp"

namespace bubbles {

namespace {

struct State {
  double r, z, psi, vol;
};

State rhs(const State& y, double lambda) {
  return {std::cos(y.psi), std::sin(y.psi),
          lambda - std::sin(y.psi) / y.r,
          kPi * y.r * y.r * std::sin(y.psi)};
}

State axpy(const State& y, double h, const State& d) {
  return {y.r + h * d.r, y.z + h * d.z, y.psi + h * d.psi, y.vol + h * d.vol};
}

// Cash-Karp embedded Runge-Kutta 4(5) step. Returns the 5th order solution
// and an error estimate.
State rk45Step(const State& y, double h, double lambda, double& err) {
  const State k1 = rhs(y, lambda);
  const State k2 = rhs(axpy(y, h / 5, k1), lambda);
  State t = y;
  t = axpy(t, h * 3 / 40, k1);
  t = axpy(t, h * 9 / 40, k2);
  const State k3 = rhs(t, lambda);
  t = y;
  t = axpy(t, h * 3 / 10, k1);
  t = axpy(t, h * -9 / 10, k2);
  t = axpy(t, h * 6 / 5, k3);
  const State k4 = rhs(t, lambda);
  t = y;
  t = axpy(t, h * -11 / 54, k1);
  t = axpy(t, h * 5 / 2, k2);
  t = axpy(t, h * -70 / 27, k3);
  t = axpy(t, h * 35 / 27, k4);
  const State k5 = rhs(t, lambda);
  t = y;
  t = axpy(t, h * 1631.0 / 55296, k1);
  t = axpy(t, h * 175.0 / 512, k2);
  t = axpy(t, h * 575.0 / 13824, k3);
  t = axpy(t, h * 44275.0 / 110592, k4);
  t = axpy(t, h * 253.0 / 4096, k5);
  const State k6 = rhs(t, lambda);
  auto comb = [&](double c1, double c3, double c4, double c5, double c6) {
    State out = y;
    out = axpy(out, h * c1, k1);
    out = axpy(out, h * c3, k3);
    out = axpy(out, h * c4, k4);
    out = axpy(out, h * c5, k5);
    out = axpy(out, h * c6, k6);
    return out;
  };
  const State y5 = comb(37.0 / 378, 250.0 / 621, 125.0 / 594, 0.0, 512.0 / 1771);
  const State y4 = comb(2825.0 / 27648, 18575.0 / 48384, 13525.0 / 55296,
                        277.0 / 14336, 1.0 / 4);
  err = std::max({std::abs(y5.r - y4.r), std::abs(y5.z - y4.z),
                  std::abs(y5.psi - y4.psi)});
  return y5;
}

// Advance from y at s to target_s (signed direction), adaptively.
// Returns false when the radius hits the axis guard before target_s.
bool advance(State& y, double& s, double target_s, double lambda,
             double r_guard, double tol) {
  const double dir = target_s >= s ? 1.0 : -1.0;
  double h = dir * std::min(0.05 / lambda, std::abs(target_s - s));
  int iter = 0;
  while (dir * (target_s - s) > 1e-15 / lambda) {
    if (++iter > 200000) throw IntegrationFailure("step count exceeded");
    if (std::abs(h) > std::abs(target_s - s)) h = target_s - s;
    double err = 0;
    const State y_new = rk45Step(y, h, lambda, err);
    const double scale = tol * std::max(1.0, std::abs(y.psi));
    if (err > scale) {
      h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.25));
      if (std::abs(h) < 1e-14 / lambda) {
        throw IntegrationFailure("step underflow");
      }
      continue;
    }
    if (y_new.r <= r_guard) return false;
    y = y_new;
    s += h;
    if (err < 0.1 * scale) {
      h *= std::min(2.0, 0.9 * std::pow(scale / std::max(err, 1e-300), 0.2));
    }
    h = dir * std::min(std::abs(h), 0.2 / lambda);
  }
  return true;
}

State bulgeState(double lambda, double shape) {
  if (shape > 1.0) throw Error("delaunay shape parameter must be <= 1");
  const double root = std::sqrt(1.0 - shape);
  return {(1.0 + root) / lambda, 0.0, kPi / 2, 0.0};
}

}  // namespace

double DelaunayProfile::radiusAt(double s) const {
  // linear interpolation; callers stay on the sampled span
  const auto& v = samples;
  if (s <= v.front().s) return v.front().radius;
  if (s >= v.back().s) return v.back().radius;
  const double ds = (v.back().s - v.front().s) / (v.size() - 1);
  const std::size_t i = std::min(
      v.size() - 2, static_cast<std::size_t>((s - v.front().s) / ds));
  const double w = (s - v[i].s) / (v[i + 1].s - v[i].s);
  return (1 - w) * v[i].radius + w * v[i + 1].radius;
}

double DelaunayProfile::zAt(double s) const {
  const auto& v = samples;
  if (s <= v.front().s) return v.front().z;
  if (s >= v.back().s) return v.back().z;
  const double ds = (v.back().s - v.front().s) / (v.size() - 1);
  const std::size_t i = std::min(
      v.size() - 2, static_cast<std::size_t>((s - v.front().s) / ds));
  const double w = (s - v[i].s) / (v[i + 1].s - v[i].s);
  return (1 - w) * v[i].z + w * v[i + 1].z;
}

double DelaunayProfile::psiAt(double s) const {
  const auto& v = samples;
  if (s <= v.front().s) return v.front().psi;
  if (s >= v.back().s) return v.back().psi;
  const double ds = (v.back().s - v.front().s) / (v.size() - 1);
  const std::size_t i = std::min(
      v.size() - 2, static_cast<std::size_t>((s - v.front().s) / ds));
  const double w = (s - v[i].s) / (v[i + 1].s - v[i].s);
  return (1 - w) * v[i].psi + w * v[i + 1].psi;
}

double DelaunayProfile::arclengthAtPsi(double target_psi) const {
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i].psi - target_psi;
    const double b = samples[i + 1].psi - target_psi;
    if (a == 0) return samples[i].s;
    if ((a < 0) != (b < 0)) {
      // refine by re-integration through the bracketing interval
      const double s0 = samples[i].s, s1 = samples[i + 1].s;
      State y{samples[i].radius, samples[i].z, samples[i].psi, 0.0};
      auto psi_at = [&](double s) {
        State w = y;
        double sc = s0;
        advance(w, sc, s, lambda, 0.0, 1e-12);
        return w.psi - target_psi;
      };
      return solveMonotone(psi_at, s0, s1, 1e-13);
    }
  }
  throw Error("tangent angle never reaches target on sampled span");
}

DelaunayProfile generateDelaunayProfile(double lambda, double shape,
                                        double s_min, double s_max,
                                        double max_ds) {
  if (lambda <= 0) throw Error("lambda must be positive");
  if (s_min > 0 || s_max < 0 || s_min == s_max) {
    throw Error("arclength span must contain the bulge at s = 0");
  }
  DelaunayProfile p;
  p.lambda = lambda;
  p.shape = shape;
  if (shape == 1.0) {
    p.kind = DelaunayKind::Cylinder;
  } else if (std::abs(shape) < 1e-12) {
    p.kind = DelaunayKind::Sphere;
  } else if (shape > 0) {
    p.kind = DelaunayKind::Unduloid;
  } else {
    p.kind = DelaunayKind::Nodoid;
  }

  double ds = 0.01 / lambda;
  if (max_ds > 0) ds = std::min(ds, max_ds);
  const int n_neg = static_cast<int>(std::ceil(-s_min / ds - 1e-9));
  const int n_pos = static_cast<int>(std::ceil(s_max / ds - 1e-9));
  const double r_guard = 1e-6 / lambda;
  const double tol = 1e-11;

  std::vector<DelaunaySample> fwd, bwd;
  State y0 = bulgeState(lambda, shape);
  // forward sweep
  {
    State y = y0;
    double s = 0;
    fwd.push_back({0.0, y.r, y.z, y.psi});
    for (int i = 1; i <= n_pos; ++i) {
      const double target = std::min(s_max, i * ds);
      if (!advance(y, s, target, lambda, r_guard, tol)) {
        if (target < s_max - 2 * ds) {
          throw PinchOff("radius reached the axis at arclength " +
                         std::to_string(s));
        }
        break;
      }
      fwd.push_back({s, y.r, y.z, y.psi});
    }
  }
  // backward sweep
  {
    State y = y0;
    double s = 0;
    for (int i = 1; i <= n_neg; ++i) {
      const double target = std::max(s_min, -i * ds);
      if (!advance(y, s, target, lambda, r_guard, tol)) {
        if (target > s_min + 2 * ds) {
          throw PinchOff("radius reached the axis at arclength " +
                         std::to_string(s));
        }
        break;
      }
      bwd.push_back({s, y.r, y.z, y.psi});
    }
  }
  p.samples.reserve(bwd.size() + fwd.size());
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) p.samples.push_back(*it);
  for (const auto& s : fwd) p.samples.push_back(s);

  // CMC residual from 4th-order finite differences of the sampled psi.
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.samples.size());
  if (n >= 5) {
    auto psi = [&](std::ptrdiff_t i) { return p.samples[i].psi; };
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double dpsi;
      if (i >= 2 && i + 2 < n) {
        dpsi = (-psi(i + 2) + 8 * psi(i + 1) - 8 * psi(i - 1) + psi(i - 2)) /
               (12 * ds);
      } else if (i < 2) {
        dpsi = (-25 * psi(i) + 48 * psi(i + 1) - 36 * psi(i + 2) +
                16 * psi(i + 3) - 3 * psi(i + 4)) /
               (12 * ds);
      } else {
        dpsi = (25 * psi(i) - 48 * psi(i - 1) + 36 * psi(i - 2) -
                16 * psi(i - 3) + 3 * psi(i - 4)) /
               (12 * ds);
      }
      if (p.samples[i].radius < 1e-3 / lambda) continue;  // axis guard
      const double res = std::abs(
          dpsi + std::sin(p.samples[i].psi) / p.samples[i].radius - lambda);
      p.cmc_residual_max = std::max(p.cmc_residual_max, res);
    }
  }
  return p;
}

double revolvedVolume(const DelaunayProfile& p, double s0, double s1) {
  if (s0 > s1) std::swap(s0, s1);
  // re-integrate with the volume state for quadrature-grade accuracy
  State y = bulgeState(p.lambda, p.shape);
  double s = 0;
  auto volume_to = [&](double target) {
    State w = y;
    double sc = 0;
    if (!advance(w, sc, target, p.lambda, 0.0, 1e-12)) {
      throw IntegrationFailure("profile pinched inside volume integral");
    }
    return w.vol;
  };
  (void)s;
  return std::abs(volume_to(s1) - volume_to(s0));
}

}  // namespace bubbles
