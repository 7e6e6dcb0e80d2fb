#pragma once

#include <Eigen/Core>

#include "lbreg/errors.hpp"

namespace lbreg {

// Legendre reference function h defining the Bregman geometry of the solver.
//
// Three kernels are supported:
//   SquaredNorm     h(x) = 1/2 ||x||^2                 dom h = R^n
//   ShiftedEntropy  h(x) = sum_i x_i log x_i + eps/2 ||x||^2,  dom h = R^n_+
//                   (0 log 0 = 0; eps >= 0)
//   Quartic         h(x) = 1/4 ||x||^4 + 1/2 ||x||^2   dom h = R^n
//
// symmetry_coefficient() returns the stored constant
//   alpha(h) = inf { D_h(x,y)/D_h(y,x) : x != y } in [0, 1],
// which feeds the admissible step range. SquaredNorm is exactly symmetric
// (alpha = 1); the other two use the conservative value 0.
class Kernel {
 public:
  enum class Kind { SquaredNorm, ShiftedEntropy, Quartic };

  static Kernel squared_norm(Eigen::Index dim);
  static Kernel shifted_entropy(Eigen::Index dim, double epsilon);
  static Kernel quartic(Eigen::Index dim);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  double epsilon() const { return epsilon_; }

  // h(x). DomainError outside dom h.
  double value(const Eigen::VectorXd& x) const;

  // grad h(x). DomainError outside int dom h (entropy needs x > 0 strictly).
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const;

  // D_h(x, y) = h(x) - h(y) - <grad h(y), x - y>.
  // Requires x in dom h and y in int dom h. Uses per-kernel closed forms that
  // avoid the cancellation of the three-term expression; bregman(x, x) == 0
  // exactly.
  double bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  double symmetry_coefficient() const;

  // Largest nu with D_h(x,y) >= nu/2 ||x-y||^2 used by the tests:
  // 1 for SquaredNorm and Quartic, eps for ShiftedEntropy.
  double strong_convexity_modulus() const;

  bool domain_contains(const Eigen::VectorXd& x) const;
  bool interior_contains(const Eigen::VectorXd& x) const;

 private:
  Kernel(Kind kind, Eigen::Index dim, double epsilon)
      : kind_(kind), dim_(dim), epsilon_(epsilon) {}

  Kind kind_;
  Eigen::Index dim_;
  double epsilon_;
};

const char* to_string(Kernel::Kind kind);

}  // namespace lbreg
