#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "lbreg/energy.hpp"
#include "lbreg/kernel.hpp"
#include "lbreg/problem.hpp"
#include "lbreg/regularizer.hpp"
#include "lbreg/solver.hpp"
#include "lbreg/subproblem.hpp"

namespace {

using namespace lbreg;

void BM_BregmanSquaredNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Kernel h = Kernel::squared_norm(n);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -1.0, 1.0);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(n, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(h.bregman(x, y));
}
BENCHMARK(BM_BregmanSquaredNorm)->Arg(64)->Arg(1024);

void BM_BregmanShiftedEntropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Kernel h = Kernel::shifted_entropy(n, 0.1);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.5, 2.0);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(h.bregman(x, y));
}
BENCHMARK(BM_BregmanShiftedEntropy)->Arg(64)->Arg(1024);

void BM_SoftThreshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(n, -2.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(soft_threshold(v, 0.5));
}
BENCHMARK(BM_SoftThreshold)->Arg(64)->Arg(1024);

void BM_QuarticScaleRoot(benchmark::State& state) {
  double s2 = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(quartic_scale_root(s2));
    s2 = s2 < 1e6 ? s2 * 1.001 : 1e-3;
  }
}
BENCHMARK(BM_QuarticScaleRoot);

void BM_EntropyCoordinateRoot(benchmark::State& state) {
  double c = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_coordinate_root(0.1, c));
    c = c < 5.0 ? c + 1e-3 : -5.0;
  }
}
BENCHMARK(BM_EntropyCoordinateRoot);

void BM_StepSparseLinear(benchmark::State& state) {
  const ProblemInstance prob = gen_sparse_linear(7, 40, 128, 8);
  const double L = smoothness_constant(prob.energy, prob.kernel).value;
  SolverConfig config;
  config.schedule = Schedule::constant(0.9 / L, 5.0);
  const StartingPoint start =
      natural_start(prob.kernel, prob.regularizer, config.schedule.delta * 5.0);
  config.x0 = start.x;
  config.p0 = start.p;
  IterateState s{0, config.x0, config.p0, prob.kernel.grad(config.x0),
                 prob.energy.value(config.x0)};
  for (auto _ : state) {
    auto next = step(s, prob.energy, prob.kernel, prob.regularizer,
                     config.schedule.delta, config.schedule.mu, config.beta);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_StepSparseLinear);

void BM_StepNonnegLinear(benchmark::State& state) {
  const ProblemInstance prob = gen_nonneg_linear(7, 40, 128, 8, 0.1);
  const double L = smoothness_constant(prob.energy, prob.kernel).value;
  SolverConfig config;
  config.schedule = Schedule::constant(0.49 / L, 1.0);
  const StartingPoint start =
      natural_start(prob.kernel, prob.regularizer, config.schedule.delta);
  config.x0 = start.x;
  config.p0 = start.p;
  IterateState s{0, config.x0, config.p0, prob.kernel.grad(config.x0),
                 prob.energy.value(config.x0)};
  for (auto _ : state) {
    auto next = step(s, prob.energy, prob.kernel, prob.regularizer,
                     config.schedule.delta, config.schedule.mu, config.beta);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_StepNonnegLinear);

void BM_StepQuadratic(benchmark::State& state) {
  const ProblemInstance prob = gen_quadratic(7, 30, 16, 4, 0.1);
  const double L = smoothness_constant(prob.energy, prob.kernel).value;
  SolverConfig config;
  config.schedule = Schedule::constant(0.49 / L, 1.0);
  config.x0 = Eigen::VectorXd::Ones(prob.kernel.dim());
  config.p0 = prob.regularizer.subgradient(config.x0);
  IterateState s{0, config.x0, config.p0, prob.kernel.grad(config.x0),
                 prob.energy.value(config.x0) + prob.regularizer.value(config.x0)};
  for (auto _ : state) {
    auto next = step(s, prob.energy, prob.kernel, prob.regularizer,
                     config.schedule.delta, config.schedule.mu, config.beta);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_StepQuadratic);

}  // namespace

BENCHMARK_MAIN();
