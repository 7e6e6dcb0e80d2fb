#include "lbreg/kernel.hpp"

#include <cmath>
#include <sstream>

namespace lbreg {

namespace {

void require_dim(const Kernel& k, const Eigen::VectorXd& x, const char* where) {
  if (x.size() != k.dim()) {
    std::ostringstream os;
    os << where << ": expected dimension " << k.dim() << ", got " << x.size();
    throw DomainError(os.str());
  }
}

// x log x with the 0 log 0 = 0 convention; negative x is a caller bug.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

namespace {
void require_positive_dim(Eigen::Index dim, const char* where) {
  if (dim <= 0) throw DomainError(std::string(where) + ": dim must be >= 1");
}
}  // namespace

Kernel Kernel::squared_norm(Eigen::Index dim) {
  require_positive_dim(dim, "squared_norm");
  return Kernel(Kind::SquaredNorm, dim, 0.0);
}

Kernel Kernel::shifted_entropy(Eigen::Index dim, double epsilon) {
  require_positive_dim(dim, "shifted_entropy");
  if (epsilon < 0.0) throw DomainError("shifted_entropy: epsilon must be >= 0");
  return Kernel(Kind::ShiftedEntropy, dim, epsilon);
}

Kernel Kernel::quartic(Eigen::Index dim) {
  require_positive_dim(dim, "quartic");
  return Kernel(Kind::Quartic, dim, 0.0);
}

double Kernel::value(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Kernel::value");
  switch (kind_) {
    case Kind::SquaredNorm:
      return 0.5 * x.squaredNorm();
    case Kind::ShiftedEntropy: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) throw DomainError("ShiftedEntropy: negative coordinate");
        s += xlogx(x[i]);
      }
      return s + 0.5 * epsilon_ * x.squaredNorm();
    }
    case Kind::Quartic: {
      const double s = x.squaredNorm();
      return 0.25 * s * s + 0.5 * s;
    }
  }
  throw DomainError("Kernel::value: bad kind");
}

Eigen::VectorXd Kernel::grad(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Kernel::grad");
  switch (kind_) {
    case Kind::SquaredNorm:
      return x;
    case Kind::ShiftedEntropy: {
      Eigen::VectorXd g(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0)
          throw DomainError("ShiftedEntropy::grad: x must be strictly positive");
        g[i] = 1.0 + std::log(x[i]) + epsilon_ * x[i];
      }
      return g;
    }
    case Kind::Quartic:
      return (x.squaredNorm() + 1.0) * x;
  }
  throw DomainError("Kernel::grad: bad kind");
}

double Kernel::bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  require_dim(*this, x, "Kernel::bregman");
  require_dim(*this, y, "Kernel::bregman");
  if (!domain_contains(x)) throw DomainError("Kernel::bregman: x outside dom h");
  if (!interior_contains(y))
    throw DomainError("Kernel::bregman: y outside int dom h");
  switch (kind_) {
    case Kind::SquaredNorm:
      return 0.5 * (x - y).squaredNorm();
    case Kind::ShiftedEntropy: {
      // sum x log(x/y) - x + y, plus the quadratic shift.
      double s = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0) s += x[i] * std::log(x[i] / y[i]);
        s += y[i] - x[i];
      }
      return s + 0.5 * epsilon_ * (x - y).squaredNorm();
    }
    case Kind::Quartic: {
      const double sx = x.squaredNorm();
      const double sy = y.squaredNorm();
      const double hx = 0.25 * sx * sx + 0.5 * sx;
      const double hy = 0.25 * sy * sy + 0.5 * sy;
      return hx - hy - (sy + 1.0) * y.dot(x - y);
    }
  }
  throw DomainError("Kernel::bregman: bad kind");
}

double Kernel::symmetry_coefficient() const {
  return kind_ == Kind::SquaredNorm ? 1.0 : 0.0;
}

double Kernel::strong_convexity_modulus() const {
  return kind_ == Kind::ShiftedEntropy ? epsilon_ : 1.0;
}

bool Kernel::domain_contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) return false;
  if (kind_ == Kind::ShiftedEntropy) return (x.array() >= 0.0).all();
  return true;
}

bool Kernel::interior_contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) return false;
  if (kind_ == Kind::ShiftedEntropy) return (x.array() > 0.0).all();
  return true;
}

const char* to_string(Kernel::Kind kind) {
  switch (kind) {
    case Kernel::Kind::SquaredNorm: return "SquaredNorm";
    case Kernel::Kind::ShiftedEntropy: return "ShiftedEntropy";
    case Kernel::Kind::Quartic: return "Quartic";
  }
  return "?";
}

}  // namespace lbreg
