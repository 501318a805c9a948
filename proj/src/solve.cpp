#include "bubbles/solve.hpp"

#include <cmath>

namespace bubbles {

double solveMonotone(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) {
    throw Error("solveMonotone: root not bracketed");
  }
  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int it = 0; it < 200; ++it) {
    // Secant step, clipped into the bracket; fall back to the midpoint.
    double m = (fb != fa) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
    const double mid = 0.5 * (a + b);
    if (!(m > a && m < b)) m = mid;
    // Alternate with bisection so the bracket provably shrinks.
    if (it % 2 == 1) m = mid;
    const double fm = f(m);
    if (std::abs(fm) <= abs_tol || m == a || m == b) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
    if (b - a <= 4 * std::numeric_limits<double>::epsilon() *
                    (std::abs(a) + std::abs(b))) {
      return 0.5 * (a + b);
    }
  }
  return 0.5 * (a + b);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, fa, m, fm, flm, left, tol / 2, depth - 1) +
         simpson(f, m, fm, b, fb, frm, right, tol / 2, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return simpson(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

}  // namespace bubbles
