#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lbreg/energy.hpp"
#include "lbreg/kernel.hpp"
#include "lbreg/regularizer.hpp"
#include "lbreg/solver.hpp"

namespace lbreg {

// Outcome of one verification pass. max_violation is the worst signed excess
// over the inequality being checked (negative = comfortable margin);
// first_failure is the iteration or sample index that first crossed the
// tolerance.
struct CheckReport {
  std::string name;
  long samples_or_iters = 0;
  double max_violation = 0.0;
  bool passed = true;
  std::optional<long> first_failure;
};

// Value of the Lyapunov surrogate
//   F(x, y) = E(x) + (beta + mu) R(x) + mu R*(y) - mu <x, y>,
// +inf when y is outside dom R*. When y is a subgradient of R at some z this
// equals f_beta(x) + mu D_R^y(x, z).
double surrogate_value(const Energy& energy, const Regularizer& reg, double beta,
                       double mu, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Central finite differences with per-coordinate step h_i = step * (1 + |x_i|).
// Domain errors from f propagate (the stencil left the domain).
Eigen::VectorXd fd_grad(const std::function<double(const Eigen::VectorXd&)>& f,
                        const Eigen::VectorXd& x, double step = 1e-6);

// Trace-level checks: f_beta nonincreasing (tol 1e-12), the per-step descent
//   f_beta(x_{k+1}) + rho D_h(x_{k+1},x_k) + mu d_r_symm <= f_beta(x_k) + 1e-10,
// nonnegativity of the recorded distances (>= -1e-12), and the running-sum
// bound sum D_h <= f_beta0 / rho + 1e-12. f_beta0 is the objective at x0,
// which the trace itself does not carry.
CheckReport check_trace_inequalities(const std::vector<TraceRecord>& trace,
                                     double rho, double mu, double f_beta0);

// Surrogate descent along recorded states (x0 first):
//   F(x_{k+1}, p_k) + rho D_h(x_{k+1}, x_k) + mu D_R^{p_{k+1}}(x_k, x_{k+1})
//     + mu D_R^{p_{k-1}}(x_k, x_{k-1})  <=  F(x_k, p_{k-1}) + 1e-9.
CheckReport check_surrogate_descent(const std::vector<IterateState>& states,
                                    const Energy& energy, const Kernel& kernel,
                                    const Regularizer& reg, double beta, double mu,
                                    double rho);

// Relative-error bound on the surrogate subgradient
//   r_{k+1} = [ grad E(x_{k+1}) + (beta+mu) p_{k+1} - mu p_k ;  mu (x_k - x_{k+1}) ],
//   ||r_{k+1}|| <= rho2 ||x_{k+1}-x_k|| + (mu_k - mu) ||p_{k+1}-p_k||,
// rho2 = L_E + L_h / delta + mu with L_E, L_h local Lipschitz constants of
// grad E / grad h estimated on the trajectory's 10%-inflated bounding box
// (2000 sampled pairs plus the recorded consecutive pairs). Ratio tolerance
// 1 + 1e-6, with a 1e-12 rounding floor at the scale of the cancelled
// gradient terms added to the denominator: a stalled step has r = 0 in exact
// arithmetic but leaves residue at that scale.
CheckReport check_subgradient_bound(const std::vector<IterateState>& states,
                                    const Energy& energy, const Kernel& kernel,
                                    const Regularizer& reg, double beta,
                                    const Schedule& schedule, uint64_t seed = 2024);

// Sampled identity D_h(z,x) - D_h(z,y) - D_h(y,x) = <grad h(x) - grad h(y), y - z>
// over seeded triples; tolerance 1e-9 * (1 + |D_h(z,x)|).
CheckReport check_three_point(const Kernel& kernel, int n_samples, uint64_t seed);

// Sampled convexity gap of L h - E:
//   E(x) - E(y) - <grad E(y), x-y> <= L D_h(x,y) + 1e-9 over seeded pairs.
CheckReport check_lc_sampled(const Energy& energy, const Kernel& kernel, double L,
                             int n_samples, uint64_t seed);

}  // namespace lbreg
