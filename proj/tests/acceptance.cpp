// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit code = number
// of failed criteria. Tolerances are pinned inline next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lbreg/diagnostics.hpp"
#include "lbreg/problem.hpp"
#include "lbreg/solver.hpp"
#include "lbreg/subproblem.hpp"

using namespace lbreg;

namespace {

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return std::string(buf);
}

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every solver run the suite executes feeds these accumulators; the
// summability and dual-membership criteria quantify over all of them.
struct RunPool {
  long runs = 0;
  long membership_checks = 0;
  double worst_membership = 0.0;
  double max_sum_ratio = 0.0;  // max over runs of (prefix sum of D_h) / bound
  bool summability_ok = true;
};

// Worst distance of p from the subdifferential of R at x, with the same
// structural threshold the solver's own membership check uses.
double membership_gap(const Regularizer& reg, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& p) {
  if (reg.kind() == Regularizer::Kind::Zero) return p.lpNorm<Eigen::Infinity>();
  double gap = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    gap = std::max(gap, std::abs(p[i]) - 1.0);
    if (std::abs(x[i]) > 1e-7)
      gap = std::max(gap, std::abs(p[i] - (x[i] > 0.0 ? 1.0 : -1.0)));
  }
  return std::max(gap, 0.0);
}

void ingest_run(RunPool& pool, const RunResult& result, const Regularizer& reg,
                double rho, double f_beta0) {
  ++pool.runs;
  for (const IterateState& s : result.states) {
    ++pool.membership_checks;
    pool.worst_membership =
        std::max(pool.worst_membership, membership_gap(reg, s.x, s.p));
  }
  const double bound = f_beta0 / rho;
  double sum = 0.0;
  double worst = 0.0;
  for (const TraceRecord& rec : result.trace) {
    sum += rec.d_h_step;
    worst = std::max(worst, sum - bound);
  }
  pool.max_sum_ratio = std::max(pool.max_sum_ratio, sum / bound);
  if (worst > 1e-10 * (1.0 + std::abs(bound))) pool.summability_ok = false;
}

struct Setup {
  SolverConfig config;
  double rho = 0.0;
  double f0 = 0.0;
};

// Default parameterization: omega = (1+alpha)/2, delta = 0.99 (1+alpha-omega)/L,
// constant mu, the full iteration budget (stopping rule disabled), and either
// the clean-slate start or all-ones (for energies whose origin is stationary).
Setup make_setup(const Energy& energy, const Kernel& kernel, const Regularizer& reg,
                 double mu, long iters, bool ones_start) {
  const double L = smoothness_constant(energy, kernel).value;
  const double alpha = kernel.symmetry_coefficient();
  const double omega = 0.5 * (1.0 + alpha);
  const double delta = 0.99 * (1.0 + alpha - omega) / L;

  Setup s;
  s.config.omega = omega;
  s.config.schedule = Schedule::constant(delta, mu);
  s.config.max_iters = iters;
  s.config.tol_step = 1e-30;
  s.config.tol_residual = 0.0;
  s.config.record_states = true;
  if (ones_start) {
    s.config.x0 = Eigen::VectorXd::Ones(kernel.dim());
    s.config.p0 = reg.subgradient(s.config.x0);
  } else {
    const StartingPoint start = natural_start(kernel, reg, delta * mu);
    s.config.x0 = start.x;
    s.config.p0 = start.p;
  }
  s.rho = omega * L / (1.0 + alpha - omega);
  s.f0 = energy.value(s.config.x0);
  return s;
}

}  // namespace

int main() {
  Outcome out[9];
  RunPool pool;

  // Kept for the surrogate-machinery criterion.
  std::optional<ProblemInstance> prob_c1, prob_c4;
  std::vector<IterateState> states_c1, states_c4;
  Schedule sched_c1, sched_c4;
  double rho_c1 = 0.0, rho_c4 = 0.0;

  // 1. Convex limit: the iteration's fixed point equals the enumerated exact
  //    minimizer of mu ||x||_1 + ||x||^2/(2 delta) s.t. Ax = b.
  try {
    const auto t0 = Clock::now();
    double max_err = 0.0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      ProblemInstance prob = gen_sparse_linear(seed, 3, 6, 1);
      const double op = operator_norm(prob.energy.A());
      const double delta = 0.99 / (op * op);

      SolverConfig config;
      config.omega = 1.0;
      config.schedule = Schedule::constant(delta, 5.0);
      config.max_iters = 50000;
      config.tol_step = 1e-22;
      config.tol_residual = 1e-11;
      config.x0 = Eigen::VectorXd::Zero(6);
      config.p0 = Eigen::VectorXd::Zero(6);
      config.record_states = true;

      RunResult result = run(config, prob.energy, prob.kernel, prob.regularizer);
      const Eigen::VectorXd xhat =
          oracle_elastic_net_bp(prob.energy.A(), prob.energy.b(), 5.0, delta);
      max_err = std::max(
          max_err, (result.final_state.x - xhat).lpNorm<Eigen::Infinity>());

      const double L = smoothness_constant(prob.energy, prob.kernel).value;
      const double rho = config.omega * L / (2.0 - config.omega);  // alpha = 1
      ingest_run(pool, result, prob.regularizer, rho, prob.energy.value(config.x0));
      if (seed == 1) {
        states_c1 = std::move(result.states);
        sched_c1 = config.schedule;
        rho_c1 = rho;
        prob_c1.emplace(std::move(prob));
      }
    }
    const double elapsed = secs_since(t0);
    out[0].pass = max_err <= 1e-6 && elapsed < 5.0;
    out[0].detail = fmt("10 instances, max |x - oracle|_inf %.3e (tol 1e-6), %.2f s (limit 5)",
                        max_err, elapsed);
  } catch (const std::exception& e) {
    out[0].detail = e.what();
  }

  // 2. Objective monotone + per-step sufficient descent on all three families.
  try {
    double worst = -1e300;
    const auto scan = [&](ProblemInstance prob, double mu, bool ones_start) {
      Setup s = make_setup(prob.energy, prob.kernel, prob.regularizer, mu, 1000,
                           ones_start);
      RunResult result = run(s.config, prob.energy, prob.kernel, prob.regularizer);
      double prev = s.f0;
      for (const TraceRecord& rec : result.trace) {
        worst = std::max(worst, rec.f_beta - prev);
        worst = std::max(
            worst, rec.f_beta + s.rho * rec.d_h_step + mu * rec.d_r_symm - prev);
        prev = rec.f_beta;
      }
      ingest_run(pool, result, prob.regularizer, s.rho, s.f0);
    };
    scan(gen_sparse_linear(2, 3, 6, 1), 1.0, false);
    scan(gen_nonneg_linear(3, 4, 6, 2, 0.1), 1.0, false);
    scan(gen_quadratic(11, 20, 5, 2, 0.1), 1.0, true);
    out[1].pass = worst <= 1e-10;
    out[1].detail =
        fmt("3 families x 1000 iterations, worst violation %.3e (tol 1e-10)", worst);
  } catch (const std::exception& e) {
    out[1].detail = e.what();
  }

  // 4. Nonconvex stationarity on the quartic family: the gradient vanishes and
  //    the step-length series plateaus.
  try {
    const auto t0 = Clock::now();
    ProblemInstance prob = gen_quadratic(11, 20, 5, 2, 0.1);
    Setup s = make_setup(prob.energy, prob.kernel, prob.regularizer, 1.0, 12000, true);
    RunResult result = run(s.config, prob.energy, prob.kernel, prob.regularizer);

    const double grad_final = prob.energy.gradient(result.final_state.x).norm();
    double total = 0.0;
    for (const TraceRecord& rec : result.trace) total += rec.step_norm;
    double tail = 0.0;
    const size_t tail_start = result.trace.size() - result.trace.size() / 10;
    for (size_t i = tail_start; i < result.trace.size(); ++i)
      tail += result.trace[i].step_norm;
    const double elapsed = secs_since(t0);

    ingest_run(pool, result, prob.regularizer, s.rho, s.f0);
    states_c4 = std::move(result.states);
    sched_c4 = s.config.schedule;
    rho_c4 = s.rho;
    prob_c4.emplace(std::move(prob));

    out[3].pass =
        grad_final <= 1e-4 && tail <= 0.01 * total && elapsed < 10.0;
    out[3].detail = fmt(
        "|grad E| %.3e (tol 1e-4), last-decade step mass %.4f%% (limit 1%%), %.2f s (limit 10)",
        grad_final, 100.0 * tail / total, elapsed);
  } catch (const std::exception& e) {
    out[3].detail = e.what();
  }

  // 5. Entropy-kernel run: strictly positive iterates, monotone objective, and
  //    an interior first-order condition certified by a multiplier fit.
  try {
    ProblemInstance prob = gen_nonneg_linear(3, 4, 6, 2, 0.1);
    Setup s = make_setup(prob.energy, prob.kernel, prob.regularizer, 1.0, 20000, false);
    RunResult result = run(s.config, prob.energy, prob.kernel, prob.regularizer);

    double min_pos = 1e300;
    for (const IterateState& st : result.states)
      min_pos = std::min(min_pos, st.x.minCoeff());

    double worst_mono = -1e300;
    double prev = s.f0;
    for (const TraceRecord& rec : result.trace) {
      worst_mono = std::max(worst_mono, rec.f_beta - prev);
      prev = rec.f_beta;
    }

    const Eigen::VectorXd& xs = result.final_state.x;
    double fit = 0.0;
    bool interior = xs.minCoeff() > 1e-6;
    if (interior) {
      const Eigen::VectorXd g = (1.0 / s.config.schedule.delta) * prob.kernel.grad(xs) +
                                s.config.schedule.mu * result.final_state.p;
      const Eigen::MatrixXd At = prob.energy.A().transpose();
      const Eigen::VectorXd lambda =
          At.completeOrthogonalDecomposition().solve(g);
      fit = (At * lambda - g).lpNorm<Eigen::Infinity>();
    }
    ingest_run(pool, result, prob.regularizer, s.rho, s.f0);

    out[4].pass = min_pos > 0.0 && worst_mono <= 1e-12 && (!interior || fit <= 1e-5);
    out[4].detail = fmt(
        "min iterate %.2e (> 0), monotone within %.1e, %s multiplier fit %.3e (tol 1e-5)",
        min_pos, std::max(worst_mono, 0.0), interior ? "interior," : "boundary;", fit);
  } catch (const std::exception& e) {
    out[4].detail = e.what();
  }

  // 6. Mirror-descent form equivalence on every supported pair with beta = 0.
  try {
    ProblemInstance sparse5 = gen_sparse_linear(5, 3, 6, 1);
    ProblemInstance nonneg6 = gen_nonneg_linear(6, 4, 6, 2, 0.1);
    ProblemInstance quad7 = gen_quadratic(7, 20, 5, 2, 0.1);

    double worst = 0.0;
    int n_pairs = 0;
    const auto compare = [&](const Energy& energy, const Kernel& kernel,
                             const Regularizer& reg, double mu, bool ones_start) {
      Setup s = make_setup(energy, kernel, reg, mu, 100, ones_start);
      RunResult a = run(s.config, energy, kernel, reg);
      RunResult b = mirror_run(s.config, energy, kernel, reg);
      if (a.states.size() != b.states.size() || a.trace.size() != b.trace.size()) {
        worst = 1e300;
        return;
      }
      for (size_t i = 0; i < a.states.size(); ++i)
        worst = std::max(
            worst, (a.states[i].x - b.states[i].x).lpNorm<Eigen::Infinity>());
      for (size_t i = 0; i < a.trace.size(); ++i)
        worst = std::max(worst, std::abs(a.trace[i].f_beta - b.trace[i].f_beta));
      ingest_run(pool, a, reg, s.rho, s.f0);
      ++n_pairs;
    };

    compare(sparse5.energy, sparse5.kernel, sparse5.regularizer, 1.0, false);
    compare(sparse5.energy, sparse5.kernel, Regularizer::zero(6), 1.0, false);
    compare(sparse5.energy, sparse5.kernel, Regularizer::zero(6), 0.0, false);
    compare(nonneg6.energy, nonneg6.kernel, nonneg6.regularizer, 1.0, false);
    compare(nonneg6.energy, nonneg6.kernel, Regularizer::zero(6), 1.0, false);
    compare(quad7.energy, quad7.kernel, quad7.regularizer, 1.0, true);
    compare(quad7.energy, quad7.kernel, Regularizer::zero(5), 1.0, true);

    out[5].pass = worst <= 1e-10;
    out[5].detail =
        fmt("%d pairs x 100 iterations, max trajectory deviation %.3e (tol 1e-10)",
            n_pairs, worst);
  } catch (const std::exception& e) {
    out[5].detail = e.what();
  }

  // 7. Geometry suite: three-points identity, finite-difference gradients,
  //    sampled convexity of L h - E at the library's L constants.
  try {
    const CheckReport tp[3] = {
        check_three_point(Kernel::squared_norm(6), 1000, 101),
        check_three_point(Kernel::shifted_entropy(6, 0.1), 1000, 102),
        check_three_point(Kernel::quartic(5), 1000, 103)};

    ProblemInstance sparse5 = gen_sparse_linear(5, 3, 6, 1);
    ProblemInstance nonneg6 = gen_nonneg_linear(6, 4, 6, 2, 0.1);
    ProblemInstance quad7 = gen_quadratic(7, 20, 5, 2, 0.1);

    std::mt19937_64 rng(2027);
    double fd_worst = 0.0;
    const auto fd_scan = [&](const Energy& energy, double lo, double hi) {
      std::uniform_real_distribution<double> box(lo, hi);
      for (int t = 0; t < 200; ++t) {
        Eigen::VectorXd x(energy.dim());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = box(rng);
        const Eigen::VectorXd grad = energy.gradient(x);
        const Eigen::VectorXd fd =
            fd_grad([&](const Eigen::VectorXd& v) { return energy.value(v); }, x);
        fd_worst = std::max(fd_worst, (fd - grad).lpNorm<Eigen::Infinity>() /
                                          (1.0 + grad.lpNorm<Eigen::Infinity>()));
      }
    };
    fd_scan(sparse5.energy, -2.0, 2.0);
    fd_scan(nonneg6.energy, 0.2, 3.0);
    fd_scan(quad7.energy, -1.5, 1.5);

    const auto lc = [&](const ProblemInstance& prob, uint64_t seed) {
      const double L = smoothness_constant(prob.energy, prob.kernel).value;
      return check_lc_sampled(prob.energy, prob.kernel, L, 1000, seed);
    };
    const CheckReport lcs[3] = {lc(sparse5, 104), lc(nonneg6, 105), lc(quad7, 106)};

    bool all = fd_worst <= 1e-6;
    double tp_worst = -1e300, lc_worst = -1e300;
    for (const CheckReport& r : tp) {
      all = all && r.passed;
      tp_worst = std::max(tp_worst, r.max_violation);
    }
    for (const CheckReport& r : lcs) {
      all = all && r.passed;
      lc_worst = std::max(lc_worst, r.max_violation);
    }
    out[6].pass = all;
    out[6].detail = fmt(
        "three-point worst %.1e, fd-gradient worst rel %.1e (tol 1e-6), LC gap worst %.1e",
        tp_worst, fd_worst, lc_worst);
  } catch (const std::exception& e) {
    out[6].detail = e.what();
  }

  // 3. Summability of Bregman step distances against f(x0)/rho, over every run
  //    executed above.
  out[2].pass = pool.runs > 0 && pool.summability_ok;
  out[2].detail = fmt("%ld runs, max prefix sum / bound %.4f (must stay <= 1)",
                      pool.runs, pool.max_sum_ratio);

  // 8. Dual membership p^k in dR(x^k) at every recorded iterate of every run.
  out[7].pass = pool.runs > 0 && pool.worst_membership <= 1e-7;
  out[7].detail = fmt("%ld iterate checks over %ld runs, max gap %.2e (tol 1e-7)",
                      pool.membership_checks, pool.runs, pool.worst_membership);

  // 9. Surrogate machinery on the criterion-1 and criterion-4 trajectories.
  try {
    if (!prob_c1 || !prob_c4 || states_c1.empty() || states_c4.empty())
      throw InvariantError("prerequisite trajectories missing");
    const CheckReport s1 =
        check_surrogate_descent(states_c1, prob_c1->energy, prob_c1->kernel,
                                prob_c1->regularizer, 0.0, sched_c1.mu, rho_c1);
    const CheckReport b1 =
        check_subgradient_bound(states_c1, prob_c1->energy, prob_c1->kernel,
                                prob_c1->regularizer, 0.0, sched_c1);
    const CheckReport s4 =
        check_surrogate_descent(states_c4, prob_c4->energy, prob_c4->kernel,
                                prob_c4->regularizer, 0.0, sched_c4.mu, rho_c4);
    const CheckReport b4 =
        check_subgradient_bound(states_c4, prob_c4->energy, prob_c4->kernel,
                                prob_c4->regularizer, 0.0, sched_c4);
    out[8].pass = s1.passed && b1.passed && s4.passed && b4.passed;
    out[8].detail = fmt(
        "surrogate descent worst %.1e / %.1e, subgradient ratio excess %.1e / %.1e",
        s1.max_violation, s4.max_violation, b1.max_violation, b4.max_violation);
  } catch (const std::exception& e) {
    out[8].detail = e.what();
  }

  static const char* kNames[9] = {
      "oracle_limit",       "monotone_sufficient_descent", "summability_bound",
      "quartic_stationarity", "entropy_interior_kkt",      "mirror_equivalence",
      "geometry_suite",     "dual_membership",             "surrogate_machinery"};

  int failures = 0;
  for (int i = 0; i < 9; ++i) {
    std::printf("[%s] %s: %s\n", out[i].pass ? "PASS" : "FAIL", kNames[i],
                out[i].detail.c_str());
    if (!out[i].pass) ++failures;
  }
  return failures;
}
