#include "lbreg/energy.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace lbreg {

namespace {

void require_dim(const Energy& e, const Eigen::VectorXd& x, const char* where) {
  if (x.size() != e.dim()) {
    std::ostringstream os;
    os << where << ": expected dimension " << e.dim() << ", got " << x.size();
    throw DomainError(os.str());
  }
}

}  // namespace

Energy Energy::least_squares(Eigen::MatrixXd A, Eigen::VectorXd b) {
  if (A.rows() != b.size())
    throw DomainError("least_squares: A rows and b length differ");
  Energy e(Kind::LeastSquares, A.cols(), 0.0);
  e.A_ = std::move(A);
  e.b_ = std::move(b);
  return e;
}

Energy Energy::kl_fidelity(Eigen::MatrixXd A, Eigen::VectorXd b, double epsilon) {
  if (A.rows() != b.size())
    throw DomainError("kl_fidelity: A rows and b length differ");
  if (epsilon < 0.0) throw DomainError("kl_fidelity: epsilon must be >= 0");
  if ((A.array() < 0.0).any())
    throw DomainError("kl_fidelity: A must be entrywise nonnegative");
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    if (A.col(j).lpNorm<Eigen::Infinity>() == 0.0)
      throw DomainError("kl_fidelity: A has a zero column");
  if ((b.array() <= 0.0).any())
    throw DomainError("kl_fidelity: b must be strictly positive");
  Energy e(Kind::KLFidelity, A.cols(), epsilon);
  e.A_ = std::move(A);
  e.b_ = std::move(b);
  return e;
}

Energy Energy::quartic(std::vector<Eigen::MatrixXd> A, Eigen::VectorXd b,
                       double epsilon) {
  if (A.empty()) throw DomainError("quartic: need at least one matrix");
  if (static_cast<Eigen::Index>(A.size()) != b.size())
    throw DomainError("quartic: matrix count and b length differ");
  if (epsilon <= 0.0) throw DomainError("quartic: epsilon must be > 0");
  const Eigen::Index d = A[0].rows();
  for (auto& Ai : A) {
    if (Ai.rows() != d || Ai.cols() != d)
      throw DomainError("quartic: matrices must be square of equal size");
    Ai = 0.5 * (Ai + Ai.transpose()).eval();
  }
  Energy e(Kind::QuarticEnergy, d, epsilon);
  e.quad_ = std::move(A);
  e.b_ = std::move(b);
  return e;
}

const Eigen::MatrixXd& Energy::A() const {
  if (kind_ == Kind::QuarticEnergy)
    throw UnsupportedPairError("Energy::A: quartic energy has no single matrix");
  return A_;
}

const std::vector<Eigen::MatrixXd>& Energy::quad_terms() const {
  if (kind_ != Kind::QuarticEnergy)
    throw UnsupportedPairError("Energy::quad_terms: not a quartic energy");
  return quad_;
}

double Energy::value(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Energy::value");
  switch (kind_) {
    case Kind::LeastSquares:
      return 0.5 * (A_ * x - b_).squaredNorm();
    case Kind::KLFidelity: {
      const Eigen::VectorXd u = A_ * x;
      double s = 0.0;
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u[i] < 0.0)
          throw DomainError("KLFidelity::value: (Ax)_i < 0");
        if (u[i] > 0.0) s += u[i] * std::log(u[i] / b_[i]);
        s += b_[i] - u[i];
      }
      return s + 0.5 * epsilon_ * (u - b_).squaredNorm();
    }
    case Kind::QuarticEnergy: {
      double s = 0.0;
      for (size_t i = 0; i < quad_.size(); ++i) {
        const double r = x.dot(quad_[i] * x) - b_[static_cast<Eigen::Index>(i)];
        s += r * r;
      }
      return 0.25 * s + 0.5 * epsilon_ * x.squaredNorm();
    }
  }
  throw DomainError("Energy::value: bad kind");
}

Eigen::VectorXd Energy::gradient(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Energy::gradient");
  switch (kind_) {
    case Kind::LeastSquares:
      return A_.transpose() * (A_ * x - b_);
    case Kind::KLFidelity: {
      const Eigen::VectorXd u = A_ * x;
      Eigen::VectorXd w(u.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u[i] <= 0.0)
          throw DomainError("KLFidelity::gradient: (Ax)_i <= 0");
        w[i] = std::log(u[i]) - std::log(b_[i]) + epsilon_ * (u[i] - b_[i]);
      }
      return A_.transpose() * w;
    }
    case Kind::QuarticEnergy: {
      Eigen::VectorXd g = epsilon_ * x;
      for (size_t i = 0; i < quad_.size(); ++i) {
        const Eigen::VectorXd Ax = quad_[i] * x;
        g += (x.dot(Ax) - b_[static_cast<Eigen::Index>(i)]) * Ax;
      }
      return g;
    }
  }
  throw DomainError("Energy::gradient: bad kind");
}

double Energy::residual(const Eigen::VectorXd& x) const {
  require_dim(*this, x, "Energy::residual");
  if (kind_ == Kind::QuarticEnergy) {
    double m = 0.0;
    for (size_t i = 0; i < quad_.size(); ++i)
      m = std::max(m, std::abs(x.dot(quad_[i] * x) - b_[static_cast<Eigen::Index>(i)]));
    return m;
  }
  return (A_ * x - b_).norm();
}

const char* to_string(Energy::Kind kind) {
  switch (kind) {
    case Energy::Kind::LeastSquares: return "LeastSquares";
    case Energy::Kind::KLFidelity: return "KLFidelity";
    case Energy::Kind::QuarticEnergy: return "QuarticEnergy";
  }
  return "?";
}

double operator_norm(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 0.0;
  const Eigen::MatrixXd B = A.transpose() * A;
  const Eigen::Index n = B.rows();

  std::mt19937_64 rng(0x5eed0fULL);  // fixed start so results are reproducible
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unit(rng);
  double nv = v.norm();
  if (nv == 0.0) v.setOnes(), nv = v.norm();
  v /= nv;

  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const Eigen::VectorXd w = B * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;  // start vector in the null space: A^T A v = 0
    const double next = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::max(std::abs(next), 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

SmoothnessConstant smoothness_constant(const Energy& energy, const Kernel& kernel) {
  const auto bad = [&] {
    std::ostringstream os;
    os << "smoothness_constant: unsupported pair " << to_string(energy.kind())
       << " / " << to_string(kernel.kind());
    return UnsupportedPairError(os.str());
  };
  double L = 0.0;
  switch (energy.kind()) {
    case Energy::Kind::LeastSquares: {
      if (kernel.kind() != Kernel::Kind::SquaredNorm) throw bad();
      const double s = operator_norm(energy.A());
      L = s * s;
      break;
    }
    case Energy::Kind::KLFidelity: {
      if (kernel.kind() != Kernel::Kind::ShiftedEntropy) throw bad();
      const double s = operator_norm(energy.A());
      const double colsum = energy.A().colwise().sum().maxCoeff();
      L = std::max(s * s, colsum);
      break;
    }
    case Energy::Kind::QuarticEnergy: {
      if (kernel.kind() != Kernel::Kind::Quartic) throw bad();
      double s = 0.0;
      const auto& terms = energy.quad_terms();
      for (size_t i = 0; i < terms.size(); ++i) {
        const double ni = operator_norm(terms[i]);
        s += 3.0 * ni * ni + ni * std::abs(energy.b()[static_cast<Eigen::Index>(i)]);
      }
      L = s + energy.epsilon();
      break;
    }
  }
  return SmoothnessConstant{1.01 * L, energy.kind(), kernel.kind()};
}

}  // namespace lbreg
