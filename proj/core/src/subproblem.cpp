#include "lbreg/subproblem.hpp"

#include <cmath>

namespace lbreg {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double lambda) {
  if (lambda < 0.0) throw DomainError("soft_threshold: lambda must be >= 0");
  return v.unaryExpr([lambda](double t) {
    const double m = std::abs(t) - lambda;
    return m > 0.0 ? (t > 0.0 ? m : -m) : 0.0;
  });
}

double quartic_scale_root(double s2) {
  if (!(s2 >= 0.0)) throw DomainError("quartic_scale_root: s2 must be >= 0");
  if (s2 == 0.0) return 1.0;
  // f(t) = t^3 s2 + t - 1 is convex and increasing on t > 0, so Newton from
  // any point with f > 0 descends monotonically onto the root. Start at
  // min(1, s2^{-1/3}), where f = t0 > 0.
  double t = std::min(1.0, std::cbrt(1.0 / s2));
  double lo = 0.0, hi = t;
  for (int it = 0; it < 200; ++it) {
    const double f = t * t * t * s2 + t - 1.0;
    if (std::abs(f) <= 1e-14) return t;
    if (f > 0.0) hi = t; else lo = t;
    const double fp = 3.0 * t * t * s2 + 1.0;
    double next = t - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

double entropy_coordinate_root(double eps, double c) {
  if (eps < 0.0) throw DomainError("entropy_coordinate_root: eps must be >= 0");
  if (eps == 0.0) {
    if (-c > 690.0) throw OverflowError("entropy_coordinate_root: root exceeds 1e300");
    return std::exp(-c);
  }
  // g(x) = log x + eps x + c is increasing but concave; plain Newton from the
  // right can overshoot below zero, so keep a bracket and bisect on escape.
  double hi = (c < 0.0) ? std::max(1.0, -c / eps) : 1.0;
  while (std::log(hi) + eps * hi + c < 0.0) hi *= 4.0;
  double lo = std::min(1.0, hi);
  while (std::log(lo) + eps * lo + c > 0.0) {
    lo *= 0.25;
    if (lo < 1e-300) { lo = 1e-300; break; }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double g = std::log(x) + eps * x + c;
    if (std::abs(g) <= 1e-13) return x;
    if (g > 0.0) hi = x; else lo = x;
    const double gp = 1.0 / x + eps;
    double next = x - g / gp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

Eigen::VectorXd solve_subproblem(const Kernel& kernel, const Regularizer& reg,
                                 const Eigen::VectorXd& pbar, double w) {
  if (pbar.size() != kernel.dim() || kernel.dim() != reg.dim())
    throw DomainError("solve_subproblem: dimension mismatch");
  if (w < 0.0) throw DomainError("solve_subproblem: weight must be >= 0");
  const bool l1 = reg.kind() == Regularizer::Kind::L1;

  switch (kernel.kind()) {
    case Kernel::Kind::SquaredNorm:
      // Optimality: w dR(x) + pbar + x owns 0.
      return l1 ? soft_threshold(-pbar, w) : Eigen::VectorXd(-pbar);

    case Kernel::Kind::Quartic: {
      // x = t_star * S with S the (thresholded) negated offset; scaling from
      // (||x||^2 + 1) x matching S requires t^3 ||S||^2 + t - 1 = 0.
      const Eigen::VectorXd s = l1 ? soft_threshold(-pbar, w) : Eigen::VectorXd(-pbar);
      return quartic_scale_root(s.squaredNorm()) * s;
    }

    case Kernel::Kind::ShiftedEntropy: {
      // Coordinatewise: log x_i + eps x_i + c_i = 0. Over the nonnegative
      // orthant the l1 norm is linear, so its weight folds into c_i.
      Eigen::VectorXd x(pbar.size());
      for (Eigen::Index i = 0; i < pbar.size(); ++i) {
        const double c = (l1 ? w : 0.0) + pbar[i] + 1.0;
        x[i] = entropy_coordinate_root(kernel.epsilon(), c);
      }
      return x;
    }
  }
  throw UnsupportedPairError("solve_subproblem: unsupported kernel");
}

StartingPoint natural_start(const Kernel& kernel, const Regularizer& reg, double w) {
  StartingPoint s;
  s.x = solve_subproblem(kernel, reg, Eigen::VectorXd::Zero(kernel.dim()), w);
  s.p = w > 0.0 ? Eigen::VectorXd((-1.0 / w) * kernel.grad(s.x))
                : Eigen::VectorXd(Eigen::VectorXd::Zero(kernel.dim()));
  return s;
}

}  // namespace lbreg
