#include "lbreg/problem.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lbreg/errors.hpp"

namespace lbreg {

namespace {

// Distinct k positions out of n, in seeded order.
std::vector<int> pick_support(std::mt19937_64& rng, int n, int k) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

void require_shape(int m, int n, int k, const char* where) {
  if (m < 1 || n < 1 || k < 0 || k > n)
    throw DomainError(std::string(where) + ": need m,n >= 1 and 0 <= k <= n");
}

}  // namespace

ProblemInstance gen_sparse_linear(uint64_t seed, int m, int n, int k) {
  require_shape(m, n, k, "gen_sparse_linear");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);

  Eigen::VectorXd x_o = Eigen::VectorXd::Zero(n);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int j : pick_support(rng, n, k)) x_o[j] = coin(rng) == 0 ? -1.0 : 1.0;

  Eigen::VectorXd b = A * x_o;
  return ProblemInstance{Energy::least_squares(std::move(A), std::move(b)),
                         Kernel::squared_norm(n), Regularizer::l1(n),
                         std::move(x_o), seed};
}

ProblemInstance gen_nonneg_linear(uint64_t seed, int m, int n, int k, double eps) {
  require_shape(m, n, k, "gen_nonneg_linear");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(0.1, 1.0);

  Eigen::MatrixXd A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = entry(rng);

  Eigen::VectorXd x_o = Eigen::VectorXd::Constant(n, 0.05);
  for (int j : pick_support(rng, n, k)) x_o[j] += 1.0;

  Eigen::VectorXd b = A * x_o;
  return ProblemInstance{Energy::kl_fidelity(std::move(A), std::move(b), eps),
                         Kernel::shifted_entropy(n, eps), Regularizer::l1(n),
                         std::move(x_o), seed};
}

ProblemInstance gen_quadratic(uint64_t seed, int m, int d, int k, double eps) {
  require_shape(m, d, k, "gen_quadratic");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Eigen::MatrixXd> terms;
  terms.reserve(m);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd G(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) G(r, c) = gauss(rng);
    terms.push_back(0.5 * (G + G.transpose()));
  }

  Eigen::VectorXd x_o = Eigen::VectorXd::Zero(d);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int j : pick_support(rng, d, k)) x_o[j] = coin(rng) == 0 ? -1.0 : 1.0;

  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = x_o.dot(terms[i] * x_o);

  return ProblemInstance{Energy::quartic(std::move(terms), std::move(b), eps),
                         Kernel::quartic(d), Regularizer::l1(d), std::move(x_o),
                         seed};
}

Eigen::VectorXd oracle_elastic_net_bp(const Eigen::MatrixXd& A,
                                      const Eigen::VectorXd& b, double mu,
                                      double delta, bool reverse_order) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (n > 10) throw DomainError("oracle_elastic_net_bp: n must be <= 10");
  if (b.size() != m) throw DomainError("oracle_elastic_net_bp: shape mismatch");
  if (!(mu >= 0.0) || !(delta > 0.0))
    throw DomainError("oracle_elastic_net_bp: need mu >= 0, delta > 0");

  constexpr double kSystemTol = 1e-10;
  constexpr double kTieTol = 1e-10;
  constexpr double kDedupeTol = 1e-8;

  long total = 1;
  for (int j = 0; j < n; ++j) total *= 3;

  // Every candidate below satisfies Ax = b, and the minimizer's own sign
  // pattern always yields a consistent system, so with a strictly convex
  // objective the candidate of least objective value is the minimizer.
  // (Checking the dual multiplier instead would be ill-posed: for supports
  // smaller than m the multiplier is not unique, and the least-norm
  // representative the solver returns can violate the off-support bound
  // even at the true solution.)
  const auto objective = [&](const Eigen::VectorXd& x) {
    return mu * x.lpNorm<1>() + x.squaredNorm() / (2.0 * delta);
  };

  std::vector<Eigen::VectorXd> candidates;
  std::vector<double> values;
  for (long step = 0; step < total; ++step) {
    const long code = reverse_order ? total - 1 - step : step;

    // Ternary digits: 0 -> off support, 1 -> +, 2 -> -.
    Eigen::VectorXd sign = Eigen::VectorXd::Zero(n);
    std::vector<int> support;
    long rem = code;
    for (int j = 0; j < n; ++j) {
      const int d = static_cast<int>(rem % 3);
      rem /= 3;
      if (d != 0) {
        sign[j] = d == 1 ? 1.0 : -1.0;
        support.push_back(j);
      }
    }
    const int s = static_cast<int>(support.size());

    // Stationarity of the support-restricted problem with |x_i| linearized
    // by sign, plus feasibility:
    //   x_S / delta + mu s_S = A_S^T lambda,  A_S x_S = b.
    Eigen::MatrixXd A_S(m, s);
    Eigen::VectorXd s_S(s);
    for (int c = 0; c < s; ++c) {
      A_S.col(c) = A.col(support[c]);
      s_S[c] = sign[support[c]];
    }
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(s + m, s + m);
    K.topLeftCorner(s, s) = (1.0 / delta) * Eigen::MatrixXd::Identity(s, s);
    K.topRightCorner(s, m) = -A_S.transpose();
    K.bottomLeftCorner(m, s) = A_S;
    Eigen::VectorXd rhs(s + m);
    rhs.head(s) = -mu * s_S;
    rhs.tail(m) = b;

    const Eigen::VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
    if ((K * sol - rhs).lpNorm<Eigen::Infinity>() > kSystemTol) continue;

    const Eigen::VectorXd x_S = sol.head(s);

    bool ok = true;
    for (int c = 0; c < s && ok; ++c)
      ok = x_S[c] * s_S[c] > 0.0;  // strict sign consistency
    if (!ok) continue;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < s; ++c) x[support[c]] = x_S[c];
    values.push_back(objective(x));
    candidates.push_back(std::move(x));
  }

  if (candidates.empty())
    throw NoSolutionError("oracle_elastic_net_bp: no sign pattern accepted");

  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i)
    if (values[i] < values[best]) best = i;

  const double tie = kTieTol * (1.0 + std::abs(values[best]));
  for (size_t i = 0; i < candidates.size(); ++i)
    if (values[i] <= values[best] + tie &&
        (candidates[i] - candidates[best]).lpNorm<Eigen::Infinity>() > kDedupeTol)
      throw AmbiguityError("oracle_elastic_net_bp: two distinct candidates tied");
  return candidates[best];
}

}  // namespace lbreg
