#pragma once

#include <Eigen/Core>

#include "lbreg/errors.hpp"

namespace lbreg {

// Convex regularizer R with explicit subgradient selection, conjugate and
// generalized Bregman distances. Two kinds: the l1 norm and the zero
// functional (which turns the iteration into plain Bregman proximal descent).
class Regularizer {
 public:
  enum class Kind { L1, Zero };

  // |p_i| may exceed 1 by at most this much and still count as a unit dual;
  // conjugate() returns +inf beyond it.
  static constexpr double kConjugateTol = 1e-9;

  static Regularizer l1(Eigen::Index dim) { return Regularizer(Kind::L1, dim); }
  static Regularizer zero(Eigen::Index dim) { return Regularizer(Kind::Zero, dim); }

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }

  double value(const Eigen::VectorXd& x) const;

  // Minimal-norm selection from the subdifferential: sign(x) for L1 (0 at 0),
  // the zero vector for Zero.
  Eigen::VectorXd subgradient(const Eigen::VectorXd& x) const;

  // Fenchel conjugate R*(y); +inf (as a double) outside its domain.
  double conjugate(const Eigen::VectorXd& y) const;

  // Membership test for q in dR(x) within tol: for L1, max |q_i| <= 1 + tol
  // and |q_i - sign(x_i)| <= tol wherever |x_i| > tol; for Zero, |q|_inf <= tol.
  bool is_subgradient(const Eigen::VectorXd& x, const Eigen::VectorXd& q,
                      double tol) const;

  // Generalized Bregman distance D_R^q(x, y) = R(x) - R(y) - <q, x - y> for a
  // subgradient q at y. SubgradientError if q fails membership at tol.
  double gen_bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& q, double tol = 1e-7) const;

  // Symmetrized distance <p - q, u - v> with p in dR(u) and q in dR(v);
  // equals D_R^q(u,v) + D_R^p(v,u) and is nonnegative by monotonicity.
  double symm_bregman(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                      const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                      double tol = 1e-7) const;

 private:
  Regularizer(Kind kind, Eigen::Index dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  Eigen::Index dim_;
};

const char* to_string(Regularizer::Kind kind);

}  // namespace lbreg
