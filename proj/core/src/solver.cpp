#include "lbreg/solver.hpp"

#include <cmath>
#include <sstream>

#include "lbreg/subproblem.hpp"

namespace lbreg {

namespace {

constexpr double kMembershipTol = 1e-7;

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

IterateState make_state(long k, Eigen::VectorXd x, Eigen::VectorXd p,
                        const Energy& energy, const Kernel& kernel,
                        const Regularizer& reg, double beta) {
  IterateState s;
  s.k = k;
  s.grad_h_x = kernel.grad(x);
  s.f_beta = energy.value(x) + beta * reg.value(x);
  s.x = std::move(x);
  s.p = std::move(p);
  return s;
}

void check_finite(const IterateState& s, double radius) {
  if (!finite(s.x) || !finite(s.p) || !std::isfinite(s.f_beta)) {
    std::ostringstream os;
    os << "non-finite iterate at iteration " << s.k;
    throw DivergenceError(os.str(), s.k);
  }
  if (s.x.lpNorm<Eigen::Infinity>() > radius) {
    std::ostringstream os;
    os << "iterate left the radius " << radius << " at iteration " << s.k;
    throw UnboundedTrajectoryError(os.str());
  }
}

}  // namespace

const char* to_string(StopReason reason) {
  return reason == StopReason::Converged ? "Converged" : "MaxIters";
}

ValidationReport validate_config(const SolverConfig& config, const Kernel& kernel,
                                 const Regularizer& reg, double L, double alpha) {
  const auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  const Schedule& sch = config.schedule;

  if (!(L > 0.0) || !std::isfinite(L)) return fail("smoothness constant must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) return fail("symmetry coefficient outside [0, 1]");
  if (!(config.omega > 0.0 && config.omega < 1.0 + alpha))
    return fail("omega outside (0, 1 + alpha)");
  if (!(sch.delta > 0.0) || !(sch.delta < (1.0 + alpha - config.omega) / L))
    return fail("(p1) violated: need 0 < delta < (1 + alpha - omega) / L");
  if (!(config.beta >= 0.0)) return fail("beta must be >= 0");
  if (!(sch.mu >= 0.0)) return fail("mu must be >= 0");
  if (sch.decay_c < 0.0) return fail("(p2) violated: decay must keep mu nonincreasing");

  if (sch.mu > 0.0) {
    // delta mu_k is nonincreasing by construction; tau must sit strictly below
    // its infimum delta * mu.
    if (!(sch.tau > 0.0) || !(sch.tau < sch.delta * sch.mu))
      return fail("(p2) violated: need 0 < tau < delta * mu_k, nonincreasing");
  } else if (reg.kind() != Regularizer::Kind::Zero) {
    return fail("(p2) violated: mu = 0 is admitted only with the Zero regularizer");
  }

  if (config.max_iters < 1) return fail("max_iters must be >= 1");
  if (config.x0.size() != kernel.dim() || config.p0.size() != reg.dim())
    return fail("x0/p0 dimension mismatch");
  if (!kernel.interior_contains(config.x0))
    return fail("x0 not in the interior of dom h");
  if (!reg.is_subgradient(config.x0, config.p0, kMembershipTol))
    return fail("p0 not a subgradient of R at x0");
  return ValidationReport{};
}

std::pair<IterateState, TraceRecord> step(const IterateState& state,
                                          const Energy& energy, const Kernel& kernel,
                                          const Regularizer& reg, double delta,
                                          double mu_k, double beta) {
  const Eigen::VectorXd g = energy.gradient(state.x);
  const double mu_eff = mu_k + beta;
  const Eigen::VectorXd pbar =
      delta * g - state.grad_h_x - (delta * mu_k) * state.p;

  Eigen::VectorXd x_next = solve_subproblem(kernel, reg, pbar, delta * mu_eff);
  Eigen::VectorXd grad_h_next = kernel.grad(x_next);

  Eigen::VectorXd p_next;
  if (mu_eff > 0.0) {
    p_next = (mu_k / mu_eff) * state.p -
             (grad_h_next - state.grad_h_x + delta * g) / (delta * mu_eff);
  } else {
    p_next = Eigen::VectorXd::Zero(state.p.size());
  }
  if (!reg.is_subgradient(x_next, p_next, kMembershipTol)) {
    std::ostringstream os;
    os << "dual update left the subdifferential at iteration " << state.k + 1;
    throw InvariantError(os.str());
  }

  TraceRecord rec;
  rec.iter = state.k + 1;
  rec.e_val = energy.value(x_next);
  rec.r_val = reg.value(x_next);
  rec.f_beta = rec.e_val + beta * rec.r_val;
  rec.d_h_step = kernel.bregman(x_next, state.x);
  rec.d_h_rev = kernel.bregman(state.x, x_next);
  rec.d_r_symm = (p_next - state.p).dot(x_next - state.x);
  rec.grad_norm = g.norm();
  rec.residual = energy.residual(x_next);
  rec.step_norm = (x_next - state.x).norm();

  IterateState next;
  next.k = state.k + 1;
  next.x = std::move(x_next);
  next.p = std::move(p_next);
  next.grad_h_x = std::move(grad_h_next);
  next.f_beta = rec.f_beta;
  return {std::move(next), rec};
}

RunResult run(const SolverConfig& config, const Energy& energy,
              const Kernel& kernel, const Regularizer& reg) {
  // run() needs L and alpha only to validate; they are recomputed here so a
  // caller cannot bypass (p1) by accident.
  const double L = smoothness_constant(energy, kernel).value;
  const double alpha = kernel.symmetry_coefficient();
  const ValidationReport report = validate_config(config, kernel, reg, L, alpha);
  if (!report.ok) throw ConfigError(report.message);

  RunResult result;
  IterateState state =
      make_state(0, config.x0, config.p0, energy, kernel, reg, config.beta);
  check_finite(state, config.divergence_radius);
  result.trace.reserve(static_cast<size_t>(std::min<long>(config.max_iters, 1 << 20)));
  if (config.record_states) result.states.push_back(state);

  result.stop_reason = StopReason::MaxIters;
  for (long k = 0; k < config.max_iters; ++k) {
    auto [next, rec] = step(state, energy, kernel, reg, config.schedule.delta,
                            config.schedule.mu_at(k), config.beta);
    check_finite(next, config.divergence_radius);
    result.trace.push_back(rec);
    if (config.record_states) result.states.push_back(next);
    state = std::move(next);
    if (rec.d_h_step <= config.tol_step && rec.residual <= config.tol_residual) {
      result.stop_reason = StopReason::Converged;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

RunResult mirror_run(const SolverConfig& config, const Energy& energy,
                     const Kernel& kernel, const Regularizer& reg) {
  if (config.beta != 0.0)
    throw ConfigError("mirror_run requires beta = 0");
  if (config.schedule.decay_c != 0.0)
    throw ConfigError("mirror_run requires a constant schedule");

  const double L = smoothness_constant(energy, kernel).value;
  const double alpha = kernel.symmetry_coefficient();
  const ValidationReport report = validate_config(config, kernel, reg, L, alpha);
  if (!report.ok) throw ConfigError(report.message);

  const double delta = config.schedule.delta;
  const double mu = config.schedule.mu;

  RunResult result;
  IterateState state = make_state(0, config.x0, config.p0, energy, kernel, reg, 0.0);
  check_finite(state, config.divergence_radius);
  if (config.record_states) result.states.push_back(state);

  Eigen::VectorXd y = state.grad_h_x + (delta * mu) * state.p;

  result.stop_reason = StopReason::MaxIters;
  for (long k = 0; k < config.max_iters; ++k) {
    const Eigen::VectorXd g = energy.gradient(state.x);
    y -= delta * g;

    Eigen::VectorXd x_next = solve_subproblem(kernel, reg, -y, delta * mu);
    Eigen::VectorXd grad_h_next = kernel.grad(x_next);
    Eigen::VectorXd p_next = mu > 0.0
        ? Eigen::VectorXd((y - grad_h_next) / (delta * mu))
        : Eigen::VectorXd(Eigen::VectorXd::Zero(state.p.size()));
    if (!reg.is_subgradient(x_next, p_next, kMembershipTol)) {
      std::ostringstream os;
      os << "dual update left the subdifferential at iteration " << k + 1;
      throw InvariantError(os.str());
    }

    TraceRecord rec;
    rec.iter = k + 1;
    rec.e_val = energy.value(x_next);
    rec.r_val = reg.value(x_next);
    rec.f_beta = rec.e_val;
    rec.d_h_step = kernel.bregman(x_next, state.x);
    rec.d_h_rev = kernel.bregman(state.x, x_next);
    rec.d_r_symm = (p_next - state.p).dot(x_next - state.x);
    rec.grad_norm = g.norm();
    rec.residual = energy.residual(x_next);
    rec.step_norm = (x_next - state.x).norm();

    IterateState next;
    next.k = k + 1;
    next.x = std::move(x_next);
    next.p = std::move(p_next);
    next.grad_h_x = std::move(grad_h_next);
    next.f_beta = rec.f_beta;
    check_finite(next, config.divergence_radius);

    result.trace.push_back(rec);
    if (config.record_states) result.states.push_back(next);
    state = std::move(next);
    if (rec.d_h_step <= config.tol_step && rec.residual <= config.tol_residual) {
      result.stop_reason = StopReason::Converged;
      break;
    }
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace lbreg
