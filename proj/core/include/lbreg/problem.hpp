#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "lbreg/energy.hpp"
#include "lbreg/kernel.hpp"
#include "lbreg/regularizer.hpp"

namespace lbreg {

// A generated desk-scale instance: matched energy/kernel/regularizer triple
// plus the planted signal it was built from. Bit-for-bit reproducible from the
// seed.
struct ProblemInstance {
  Energy energy;
  Kernel kernel;
  Regularizer regularizer;
  std::optional<Eigen::VectorXd> ground_truth;
  uint64_t seed = 0;
};

// Gaussian A (m x n), k-sparse signal with +-1 entries, b = A x_o.
// Pair: LeastSquares / SquaredNorm / L1.
ProblemInstance gen_sparse_linear(uint64_t seed, int m, int n, int k);

// Uniform [0.1, 1] entries (strictly positive, so no zero column), signal
// = 0.05 floor + k unit spikes, b = A x_o > 0.
// Pair: KLFidelity / ShiftedEntropy / L1, both with the given eps.
ProblemInstance gen_nonneg_linear(uint64_t seed, int m, int n, int k, double eps);

// m symmetrized Gaussian matrices A_i (d x d), k-sparse +-1 signal,
// b_i = x_o^T A_i x_o. Pair: QuarticEnergy / Quartic / L1.
ProblemInstance gen_quadratic(uint64_t seed, int m, int d, int k, double eps);

// Exact minimizer of  mu ||x||_1 + ||x||^2 / (2 delta)  s.t.  Ax = b
// by enumeration of all 3^n sign patterns (n <= 10). Each pattern's
// stationarity/feasibility saddle system is solved by minimum-norm least
// squares; a pattern yields a candidate when the system residual is <= 1e-10
// and the solved support is strictly sign-consistent. Every candidate is then
// feasible, and the minimizer's own pattern is always among them, so the
// candidate of least objective value is the minimizer. NoSolutionError if no
// candidate survives, AmbiguityError if two objective-tied candidates differ
// by more than 1e-8 in the sup norm. reverse_order flips the enumeration (the
// result must not depend on it).
Eigen::VectorXd oracle_elastic_net_bp(const Eigen::MatrixXd& A,
                                      const Eigen::VectorXd& b, double mu,
                                      double delta, bool reverse_order = false);

}  // namespace lbreg
