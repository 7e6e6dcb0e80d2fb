#include "lbreg/regularizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace lbreg {

namespace {

void require_dim(const Regularizer& r, const Eigen::VectorXd& x, const char* where) {
  if (x.size() != r.dim()) {
    std::ostringstream os;
    os << where << ": expected dimension " << r.dim() << ", got " << x.size();
    throw DomainError(os.str());
  }
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double Regularizer::value(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Regularizer::value");
  return kind_ == Kind::L1 ? x.lpNorm<1>() : 0.0;
}

Eigen::VectorXd Regularizer::subgradient(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Regularizer::subgradient");
  if (kind_ == Kind::Zero) return Eigen::VectorXd::Zero(x.size());
  return x.unaryExpr([](double v) { return sgn(v); });
}

double Regularizer::conjugate(const Eigen::VectorXd& y) const {
  require_dim(*this, y, "Regularizer::conjugate");
  const double inf = std::numeric_limits<double>::infinity();
  const double m = y.size() > 0 ? y.lpNorm<Eigen::Infinity>() : 0.0;
  if (kind_ == Kind::L1) return m <= 1.0 + kConjugateTol ? 0.0 : inf;
  return m <= kConjugateTol ? 0.0 : inf;
}

bool Regularizer::is_subgradient(const Eigen::VectorXd& x, const Eigen::VectorXd& q,
                                 double tol) const {
  if (x.size() != dim_ || q.size() != dim_) return false;
  if (kind_ == Kind::Zero) return q.lpNorm<Eigen::Infinity>() <= tol;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(q[i]) > 1.0 + tol) return false;
    if (std::abs(x[i]) > tol && std::abs(q[i] - sgn(x[i])) > tol) return false;
  }
  return true;
}

double Regularizer::gen_bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& q, double tol) const {
  require_dim(*this, x, "Regularizer::gen_bregman");
  require_dim(*this, y, "Regularizer::gen_bregman");
  if (!is_subgradient(y, q, tol))
    throw SubgradientError("gen_bregman: q is not a subgradient at y");
  return value(x) - value(y) - q.dot(x - y);
}

double Regularizer::symm_bregman(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                 double tol) const {
  require_dim(*this, u, "Regularizer::symm_bregman");
  require_dim(*this, v, "Regularizer::symm_bregman");
  if (!is_subgradient(u, p, tol))
    throw SubgradientError("symm_bregman: p is not a subgradient at u");
  if (!is_subgradient(v, q, tol))
    throw SubgradientError("symm_bregman: q is not a subgradient at v");
  return (p - q).dot(u - v);
}

const char* to_string(Regularizer::Kind kind) {
  return kind == Regularizer::Kind::L1 ? "L1" : "Zero";
}

}  // namespace lbreg
