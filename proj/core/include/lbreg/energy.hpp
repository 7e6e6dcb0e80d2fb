#pragma once

#include <vector>

#include <Eigen/Core>

#include "lbreg/errors.hpp"
#include "lbreg/kernel.hpp"

namespace lbreg {

// Smooth data-fidelity term E of the composite objective. Three kinds:
//
//   LeastSquares   E(x) = 1/2 ||Ax - b||^2
//   KLFidelity     E(x) = KL(Ax, b) + eps/2 ||Ax - b||^2 on Ax >= 0,
//                  KL(u, b) = sum u_i log(u_i/b_i) - u_i + b_i  (0 log 0 = 0);
//                  requires A >= 0 entrywise with no zero column and b > 0
//   QuarticEnergy  E(x) = 1/4 sum_i (x^T A_i x - b_i)^2 + eps/2 ||x||^2
//                  with symmetric A_i and eps > 0
class Energy {
 public:
  enum class Kind { LeastSquares, KLFidelity, QuarticEnergy };

  static Energy least_squares(Eigen::MatrixXd A, Eigen::VectorXd b);
  static Energy kl_fidelity(Eigen::MatrixXd A, Eigen::VectorXd b, double epsilon);
  static Energy quartic(std::vector<Eigen::MatrixXd> A, Eigen::VectorXd b,
                        double epsilon);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  const Eigen::MatrixXd& A() const;                  // linear kinds
  const std::vector<Eigen::MatrixXd>& quad_terms() const;  // QuarticEnergy
  const Eigen::VectorXd& b() const { return b_; }

  double value(const Eigen::VectorXd& x) const;

  // DomainError for KLFidelity when some (Ax)_i <= 0 (log undefined there).
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  // Data-fit residual used for stopping: ||Ax - b||_2 for the linear kinds,
  // max_i |x^T A_i x - b_i| for QuarticEnergy.
  double residual(const Eigen::VectorXd& x) const;

 private:
  Energy(Kind kind, Eigen::Index dim, double epsilon)
      : kind_(kind), dim_(dim), epsilon_(epsilon) {}

  Kind kind_;
  Eigen::Index dim_;
  double epsilon_;
  Eigen::MatrixXd A_;
  std::vector<Eigen::MatrixXd> quad_;
  Eigen::VectorXd b_;
};

const char* to_string(Energy::Kind kind);

// Largest singular value of A: power iteration on A^T A, relative tolerance
// 1e-10, at most 1000 iterations, deterministic seeded start vector.
double operator_norm(const Eigen::MatrixXd& A);

// A constant L making L*h - E convex on int dom h, for the supported pairs
//   LeastSquares  / SquaredNorm     L = 1.01 ||A||^2
//   KLFidelity    / ShiftedEntropy  L = 1.01 max(||A||^2, max_j sum_i a_ij)
//   QuarticEnergy / Quartic         L = 1.01 (sum_i (3||A_i||^2 + ||A_i|| |b_i|) + eps)
// UnsupportedPairError for any other combination.
struct SmoothnessConstant {
  double value;
  Energy::Kind energy;
  Kernel::Kind kernel;
};

SmoothnessConstant smoothness_constant(const Energy& energy, const Kernel& kernel);

}  // namespace lbreg
