#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "lbreg/kernel.hpp"

using namespace lbreg;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec1(double a) {
  Eigen::VectorXd v(1);
  v << a;
  return v;
}

// Bregman distance straight from the definition, to cross-check the
// specialized closed forms.
double naive_bregman(const Kernel& h, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& y) {
  return h.value(x) - h.value(y) - h.grad(y).dot(x - y);
}

Eigen::VectorXd sample(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_CASE("squared norm kernel: value, gradient, bregman") {
  const Kernel h = Kernel::squared_norm(2);
  const Eigen::VectorXd x = vec2(3.0, 4.0);
  CHECK(h.value(x) == doctest::Approx(12.5).epsilon(1e-15));
  CHECK((h.grad(x) - x).norm() == 0.0);

  const Eigen::VectorXd y = vec2(1.0, -2.0);
  CHECK(h.bregman(x, y) ==
        doctest::Approx(0.5 * (x - y).squaredNorm()).epsilon(1e-15));
  CHECK(h.symmetry_coefficient() == 1.0);
  CHECK(h.strong_convexity_modulus() == 1.0);
  CHECK(h.interior_contains(x));
}

TEST_CASE("shifted entropy kernel: frozen bregman value") {
  const Kernel h0 = Kernel::shifted_entropy(1, 0.0);
  // x log(x/y) - x + y at x=2, y=1
  CHECK(h0.bregman(vec1(2.0), vec1(1.0)) ==
        doctest::Approx(0.3862943611198906).epsilon(1e-15));

  const Kernel h1 = Kernel::shifted_entropy(1, 0.1);
  CHECK(h1.bregman(vec1(2.0), vec1(1.0)) ==
        doctest::Approx(0.3862943611198906 + 0.05).epsilon(1e-14));
  CHECK(h1.strong_convexity_modulus() == 0.1);
  CHECK(h1.symmetry_coefficient() == 0.0);
}

TEST_CASE("shifted entropy kernel: domain and boundary conventions") {
  const Kernel h = Kernel::shifted_entropy(2, 0.0);
  const Eigen::VectorXd boundary = vec2(0.0, 1.0);
  CHECK(h.domain_contains(boundary));
  CHECK(!h.interior_contains(boundary));
  CHECK(!h.domain_contains(vec2(-0.1, 1.0)));
  // 0 log 0 = 0
  CHECK(h.value(vec2(0.0, 1.0)) == 0.0);
  CHECK_THROWS_AS((void)h.grad(boundary), DomainError);
  CHECK_THROWS_AS((void)h.value(vec2(-1.0, 1.0)), DomainError);
}

TEST_CASE("quartic kernel: closed forms") {
  const Kernel h = Kernel::quartic(2);
  const Eigen::VectorXd x = vec2(1.0, 1.0);
  CHECK(h.value(x) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK((h.grad(x) - vec2(3.0, 3.0)).norm() == 0.0);
  CHECK(h.symmetry_coefficient() == 0.0);
  CHECK(h.strong_convexity_modulus() == 1.0);
  CHECK(h.interior_contains(vec2(-50.0, 3.0)));
}

TEST_CASE("bregman distance vanishes exactly at identical points") {
  std::mt19937_64 rng(42);
  const Kernel kernels[] = {Kernel::squared_norm(4),
                            Kernel::shifted_entropy(4, 0.1),
                            Kernel::quartic(4)};
  for (const Kernel& h : kernels) {
    for (int s = 0; s < 50; ++s) {
      const Eigen::VectorXd x =
          h.kind() == Kernel::Kind::ShiftedEntropy ? sample(rng, 4, 1e-3, 10.0)
                                                   : sample(rng, 4, -10.0, 10.0);
      CHECK(h.bregman(x, x) == 0.0);
    }
  }
}

TEST_CASE("specialized bregman forms agree with the definition") {
  std::mt19937_64 rng(7);
  const Kernel kernels[] = {Kernel::squared_norm(5),
                            Kernel::shifted_entropy(5, 0.1),
                            Kernel::shifted_entropy(5, 0.0),
                            Kernel::quartic(5)};
  for (const Kernel& h : kernels) {
    for (int s = 0; s < 200; ++s) {
      const bool positive = h.kind() == Kernel::Kind::ShiftedEntropy;
      const Eigen::VectorXd x = positive ? sample(rng, 5, 1e-2, 8.0)
                                         : sample(rng, 5, -8.0, 8.0);
      const Eigen::VectorXd y = positive ? sample(rng, 5, 1e-2, 8.0)
                                         : sample(rng, 5, -8.0, 8.0);
      const double closed = h.bregman(x, y);
      const double naive = naive_bregman(h, x, y);
      CHECK(std::abs(closed - naive) <= 1e-9 * (1.0 + std::abs(closed)));
      CHECK(closed >= -1e-12);
    }
  }
}

TEST_CASE("bregman dominates the strong convexity quadratic") {
  std::mt19937_64 rng(11);
  const Kernel kernels[] = {Kernel::squared_norm(3),
                            Kernel::shifted_entropy(3, 0.25),
                            Kernel::quartic(3)};
  for (const Kernel& h : kernels) {
    const double nu = h.strong_convexity_modulus();
    for (int s = 0; s < 200; ++s) {
      const bool positive = h.kind() == Kernel::Kind::ShiftedEntropy;
      const Eigen::VectorXd x = positive ? sample(rng, 3, 1e-3, 10.0)
                                         : sample(rng, 3, -10.0, 10.0);
      const Eigen::VectorXd y = positive ? sample(rng, 3, 1e-3, 10.0)
                                         : sample(rng, 3, -10.0, 10.0);
      CHECK(h.bregman(x, y) >= 0.5 * nu * (x - y).squaredNorm() - 1e-10);
    }
  }
}

TEST_CASE("symmetry coefficient: squared norm is exactly symmetric") {
  std::mt19937_64 rng(3);
  const Kernel h = Kernel::squared_norm(4);
  for (int s = 0; s < 100; ++s) {
    const Eigen::VectorXd x = sample(rng, 4, -5.0, 5.0);
    const Eigen::VectorXd y = sample(rng, 4, -5.0, 5.0);
    CHECK(h.bregman(x, y) == doctest::Approx(h.bregman(y, x)).epsilon(1e-12));
  }
}

TEST_CASE("symmetry coefficient: entropy admits no positive uniform constant") {
  // D(x,y)/D(y,x) can be pushed toward zero, so any alpha bounded away from
  // zero eventually fails alpha * D(x,y) <= D(y,x).
  const Kernel h = Kernel::shifted_entropy(1, 0.0);
  const double dxy = h.bregman(vec1(1e-6), vec1(1.0));
  const double dyx = h.bregman(vec1(1.0), vec1(1e-6));
  CHECK(dyx / dxy > 12.0);

  const double dxy2 = h.bregman(vec1(1e-12), vec1(1.0));
  const double dyx2 = h.bregman(vec1(1.0), vec1(1e-12));
  CHECK(dyx2 / dxy2 > 25.0);
  CHECK(dyx2 / dxy2 > dyx / dxy);
}

TEST_CASE("kernel factories validate their inputs") {
  CHECK_THROWS_AS((void)Kernel::squared_norm(0), DomainError);
  CHECK_THROWS_AS((void)Kernel::shifted_entropy(3, -0.5), DomainError);
  CHECK_THROWS_AS((void)Kernel::quartic(-1), DomainError);
}

TEST_CASE("kernel dimension mismatches are rejected") {
  const Kernel h = Kernel::squared_norm(3);
  CHECK_THROWS_AS((void)h.value(vec2(1.0, 2.0)), DomainError);
  CHECK_THROWS_AS((void)h.bregman(vec2(1.0, 2.0), vec2(0.0, 0.0)), DomainError);
}
