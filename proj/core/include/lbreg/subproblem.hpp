#pragma once

#include <Eigen/Core>

#include "lbreg/kernel.hpp"
#include "lbreg/regularizer.hpp"

namespace lbreg {

// Closed-form solvers for the per-iteration subproblem
//
//   x+ = argmin_x  w * R(x) + <pbar, x> + h(x),        w = delta * (mu + beta)
//
// which is the update rule after multiplying the linearized model by delta and
// dropping constants. All six kernel/regularizer pairs are supported.

// Componentwise S_lambda(v) = sign(v) * max(|v| - lambda, 0). lambda >= 0.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double lambda);

// Unique positive root of t^3 * s2 + t - 1 = 0 for s2 >= 0 (s2 = ||S||^2).
// Safeguarded Newton with residual |f(t)| <= 1e-14; the root lies in (0, 1].
double quartic_scale_root(double s2);

// Unique positive root of log x + eps * x + c = 0 (eps >= 0). For eps = 0 the
// root is exp(-c); OverflowError if it exceeds 1e300. Residual <= 1e-12.
double entropy_coordinate_root(double eps, double c);

// Minimizer of w R(x) + <pbar, x> + h(x); w >= 0. DomainError for w < 0 or a
// dimension mismatch, UnsupportedPairError for a pair without a closed form.
Eigen::VectorXd solve_subproblem(const Kernel& kernel, const Regularizer& reg,
                                 const Eigen::VectorXd& pbar, double w);

// State at which the dual recursion starts with a clean slate:
// x = argmin { w R(x) + h(x) } and p the optimality subgradient, so that
// grad_h(x) + w p = 0. For the squared-norm kernel this is x = p = 0.
struct StartingPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
};

StartingPoint natural_start(const Kernel& kernel, const Regularizer& reg, double w);

}  // namespace lbreg
