#ifndef BUBBLES_SOLVE_HPP
#define BUBBLES_SOLVE_HPP

#include <functional>

#include "bubbles/types.hpp"

namespace bubbles {

// Root of a monotone function on [lo, hi] by bisection with secant
// refinement; |f(root)| driven to abs_tol (or the bracket to machine width).
double solveMonotone(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol = 1e-12);

// Adaptive Simpson quadrature.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 40);

}  // namespace bubbles

#endif
