#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lbreg/energy.hpp"
#include "lbreg/kernel.hpp"
#include "lbreg/regularizer.hpp"

namespace lbreg {

// Step-size and penalty schedule. delta is constant over the run; mu is either
// constant or decays toward its base value as mu + c/(k+1)^2.
struct Schedule {
  double delta = 0.0;
  double mu = 0.0;
  double decay_c = 0.0;  // 0 means constant mu
  double tau = 0.0;      // lower buffer for delta * mu, see validate_config

  static Schedule constant(double delta, double mu) {
    return Schedule{delta, mu, 0.0, 0.5 * delta * mu};
  }
  static Schedule decaying(double delta, double mu, double c) {
    return Schedule{delta, mu, c, 0.5 * delta * mu};
  }
  double mu_at(long k) const {
    if (decay_c == 0.0) return mu;
    const double t = static_cast<double>(k) + 1.0;
    return mu + decay_c / (t * t);
  }
};

struct SolverConfig {
  double beta = 0.0;
  double omega = 0.0;  // curvature split parameter in (0, 1 + alpha)
  Schedule schedule;
  long max_iters = 10000;
  double tol_step = 1e-14;      // on D_h(x_{k+1}, x_k)
  double tol_residual = 1e-8;   // on the energy residual
  Eigen::VectorXd x0;
  Eigen::VectorXd p0;
  bool record_states = false;
  double divergence_radius = 1e8;  // UnboundedTrajectoryError beyond this
};

struct IterateState {
  long k = 0;
  Eigen::VectorXd x;
  Eigen::VectorXd p;        // maintained subgradient of R at x
  Eigen::VectorXd grad_h_x; // cached kernel gradient at x
  double f_beta = 0.0;      // E(x) + beta R(x)
};

struct TraceRecord {
  long iter = 0;        // index of the iterate the row describes (1-based)
  double f_beta = 0.0;  // at the new iterate
  double e_val = 0.0;
  double r_val = 0.0;
  double d_h_step = 0.0;  // D_h(x_{k+1}, x_k)
  double d_h_rev = 0.0;   // D_h(x_k, x_{k+1})
  double d_r_symm = 0.0;  // <p_{k+1} - p_k, x_{k+1} - x_k>
  double grad_norm = 0.0; // ||grad E(x_k)|| at the point the step linearized
  double residual = 0.0;  // at the new iterate
  double step_norm = 0.0;
};

enum class StopReason { Converged, MaxIters };

const char* to_string(StopReason reason);

struct RunResult {
  IterateState final_state;
  std::vector<TraceRecord> trace;
  std::vector<IterateState> states;  // filled only when record_states, x0 first
  StopReason stop_reason = StopReason::MaxIters;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
};

// Checks, in order: omega in (0, 1+alpha); the step condition
//   (p1)  0 < delta < (1 + alpha - omega) / L;
// the penalty condition
//   (p2)  0 < tau < delta * mu_{k+1} <= delta * mu_k for all k,
// skipped when mu == 0, which is admitted only with the Zero regularizer;
// x0 in int dom h; p0 in dR(x0) within 1e-7. Returns the first violation.
ValidationReport validate_config(const SolverConfig& config, const Kernel& kernel,
                                 const Regularizer& reg, double L, double alpha);

// One iteration x_k -> x_{k+1} at penalty mu_k:
//   pbar  = delta grad E(x_k) - grad h(x_k) - delta mu_k p_k
//   x_{k+1} = argmin { delta (mu_k + beta) R(x) + <pbar, x> + h(x) }
//   p_{k+1} = mu_k/(mu_k+beta) p_k
//             - [grad h(x_{k+1}) - grad h(x_k) + delta grad E(x_k)] / (delta (mu_k+beta))
// The dual update is exactly the subproblem's optimality subgradient;
// InvariantError if it fails membership at 1e-7.
std::pair<IterateState, TraceRecord> step(const IterateState& state,
                                          const Energy& energy, const Kernel& kernel,
                                          const Regularizer& reg, double delta,
                                          double mu_k, double beta);

// Full iteration driver. Validates first (ConfigError naming the violated
// condition), then steps until D_h(x_{k+1}, x_k) <= tol_step AND
// residual <= tol_residual (Converged) or max_iters (MaxIters).
// DivergenceError on non-finite iterates, UnboundedTrajectoryError past
// divergence_radius.
RunResult run(const SolverConfig& config, const Energy& energy,
              const Kernel& kernel, const Regularizer& reg);

// Mirror-descent form of the same iteration, requiring beta = 0 and a
// constant schedule:
//   y_{k+1} = y_k - delta grad E(x_k),  y_k = grad h(x_k) + delta mu p_k
//   x_{k+1} = argmin { delta mu R(x) + <-y_{k+1}, x> + h(x) }
// Produces the same trajectory as run() up to rounding.
RunResult mirror_run(const SolverConfig& config, const Energy& energy,
                     const Kernel& kernel, const Regularizer& reg);

}  // namespace lbreg
