#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "mtgl/assumptions.hpp"
#include "mtgl/error.hpp"
#include "mtgl/linalg.hpp"
#include "support.hpp"

using namespace mtgl;
using mtgl::testing::random_dataset;

TEST_CASE("orthonormal design diagnostics") {
  auto data = random_dataset(20, 8, 3, 1, true);
  const auto r = gram_diagnostics(data);
  CHECK(r.max_coherence <= 1e-10);
  CHECK(r.phi_max == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.unit_diagonal_max_deviation <= 1e-12);
  for (std::size_t s : {1u, 4u, 8u})
    for (double a : {1.5, 8.0, 100.0}) CHECK(coherence_admissible(r, s, a));
}

TEST_CASE("two-column coherence built by hand") {
  // unit columns with sample correlation 0.3: x2 = 0.3 x1 + sqrt(0.91) u, u orthogonal to x1
  Matrix x(4, 2);
  const double c = std::sqrt(0.91);
  x << 1, 0.3 + c, 1, 0.3 - c, 1, 0.3 + c, 1, 0.3 - c;
  MultiTaskDataset data({{x, Vector::Zero(4)}});
  const auto r = gram_diagnostics(data);
  CHECK(r.max_coherence == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.phi_max == doctest::Approx(1.3).epsilon(1e-9));
}

TEST_CASE("sign design gives c_prime = 1") {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.5);
  Matrix x(10, 5);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = coin(rng) ? 1.0 : -1.0;
  MultiTaskDataset data({{x, Vector::Zero(10)}, {-x, Vector::Zero(10)}});
  CHECK(gram_diagnostics(data).c_prime == doctest::Approx(1.0));
}

TEST_CASE("zero design is rejected") {
  MultiTaskDataset data({{Matrix::Zero(5, 3), Vector::Zero(5)}});
  CHECK_THROWS_AS(gram_diagnostics(data), diagnostic_error);
}

TEST_CASE("coherence admissibility examples and monotonicity") {
  AssumptionReport r;
  r.max_coherence = 0.01;
  CHECK(coherence_admissible(r, 2, 2.0));
  r.max_coherence = 0.05;
  CHECK_FALSE(coherence_admissible(r, 2, 2.0));
  r.unit_diagonal_max_deviation = 1e-3;
  r.max_coherence = 0.0;
  CHECK_FALSE(coherence_admissible(r, 1, 2.0));
  r.unit_diagonal_max_deviation = 0.0;
  for (double mu : {0.001, 0.004, 0.01, 0.03}) {
    r.max_coherence = mu;
    for (std::size_t s = 1; s <= 6; ++s)
      for (double a = 1.25; a < 10; a += 0.75) {
        if (!coherence_admissible(r, s, a)) continue;
        for (std::size_t s2 = 1; s2 <= s; ++s2)
          for (double a2 = 1.05; a2 <= a; a2 += 0.25) CHECK(coherence_admissible(r, s2, a2));
      }
  }
  CHECK_THROWS_AS(coherence_admissible(r, 0, 2.0), invalid_parameter);
  CHECK_THROWS_AS(coherence_admissible(r, 1, 1.0), invalid_parameter);
}

TEST_CASE("restricted eigenvalue lower bound from coherence") {
  CHECK(re_lower_bound_from_coherence(2.0) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(re_lower_bound_from_coherence(1e12) == doctest::Approx(1.0));
  CHECK(re_lower_bound_from_coherence(1.0 + 1e-12) < 1e-5);
  CHECK_THROWS_AS(re_lower_bound_from_coherence(1.0), invalid_parameter);
}

TEST_CASE("phi_max equals the dense eigendecomposition of the block diagonal gram") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> m_pick(2, 8), t_pick(1, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const int M = m_pick(rng), T = t_pick(rng);
    std::vector<Task> tasks;
    Matrix block = Matrix::Zero(M * T, M * T);
    for (int t = 0; t < T; ++t) {
      Matrix x = mtgl::testing::gaussian_matrix(12, M, rng);
      if (trial % 2) x = mtgl::testing::unit_columns(x);
      block.block(t * M, t * M, M, M) = x.transpose() * x / 12.0;
      tasks.push_back({x, Vector::Zero(12)});
    }
    MultiTaskDataset data(std::move(tasks));
    const double dense = Eigen::SelfAdjointEigenSolver<Matrix>(block).eigenvalues().maxCoeff();
    CHECK(gram_diagnostics(data).phi_max == doctest::Approx(dense).epsilon(1e-8));
  }
}

TEST_CASE("power iteration handles a start orthogonal to the top eigenvector") {
  Matrix g(2, 2);
  g << 1, -0.5, -0.5, 1;
  CHECK(largest_eigenvalue(g) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(largest_eigenvalue(Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("re quotient and cone membership") {
  auto data = random_dataset(20, 4, 2, 3, true);
  GroupCoefficients d = GroupCoefficients::zeros(4, 2);
  d.values.row(0) << 1, 2;
  SparsityPattern J({0}, 4);
  CHECK(in_re_cone(d, J));
  CHECK(re_quotient(data, d, J).value() == doctest::Approx(1.0));
  d.values.row(1) << 3 * std::sqrt(5.0), 0;
  CHECK(in_re_cone(d, J));
  d.values.row(1) *= 1.01;
  CHECK_FALSE(in_re_cone(d, J));
  CHECK_FALSE(re_quotient(data, d, SparsityPattern({2}, 4)).has_value());
}

TEST_CASE("re estimate on identity gram") {
  auto data = random_dataset(16, 6, 2, 5, true);
  const auto probe = re_upper_probe(data, 3, 20, 7);
  CHECK(probe.ratio >= 1.0 - 1e-9);
  CHECK(in_re_cone(probe.direction, probe.support));
  CHECK(probe.support.size() <= 3);
  // the first probe has nothing off the support and attains exactly 1
  GroupCoefficients on = GroupCoefficients::zeros(6, 2);
  on.values.row(2) << 0.3, -1.2;
  CHECK(re_quotient(data, on, SparsityPattern({2}, 6)).value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("re estimate respects the coherence lower bound") {
  auto data = random_dataset(400, 5, 2, 8);
  const auto r = gram_diagnostics(data);
  for (double alpha : {1.2, 1.5, 2.0}) {
    if (!coherence_admissible(r, 1, alpha)) continue;
    CHECK(re_upper_estimate(data, 1, 30, 2) >= re_lower_bound_from_coherence(alpha) - 1e-9);
  }
}

TEST_CASE("duplicated column drives the re estimate to zero") {
  std::mt19937_64 rng(4);
  Matrix col = mtgl::testing::unit_columns(mtgl::testing::gaussian_matrix(10, 1, rng));
  Matrix x(10, 2);
  x << col, col;
  MultiTaskDataset data({{x, Vector::Zero(10)}});
  // oracle: grid over the probe family (1, a) with the pair split across J and J^c
  double grid_min = kInfinity;
  for (int k = -300; k <= 300; ++k) {
    GroupCoefficients d = GroupCoefficients::zeros(2, 1);
    d.values << 1.0, 0.01 * k;
    const SparsityPattern J({0}, 2);
    if (!in_re_cone(d, J)) continue;
    grid_min = std::min(grid_min, re_quotient(data, d, J).value());
  }
  CHECK(grid_min < 1e-12);
  const double est = re_upper_estimate(data, 1, 200, 11);
  CHECK(est < 0.02);
  CHECK(est >= grid_min);
}

TEST_CASE("re estimate is nonincreasing in s for a fixed seed") {
  auto data = random_dataset(30, 10, 2, 12);
  double prev = kInfinity;
  for (std::size_t s = 1; s <= 4; ++s) {
    const double e = re_upper_estimate(data, s, 15, 3);
    CHECK(e <= prev);
    prev = e;
  }
  CHECK(re_upper_estimate(data, 2, 15, 3) == re_upper_estimate(data, 2, 15, 3));
  CHECK_THROWS_AS(re_upper_estimate(data, 0, 15, 3), invalid_parameter);
  CHECK_THROWS_AS(re_upper_estimate(data, 11, 15, 3), invalid_parameter);
}

TEST_CASE("report invariants") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto data = random_dataset(25, 6, 2, 40 + seed);
    const auto r = gram_diagnostics(data);
    CHECK(r.max_coherence >= 0.0);
    CHECK(r.phi_max >= 1.0 - r.unit_diagonal_max_deviation);
    if (coherence_admissible(r, 1, 1.5))
      CHECK(re_lower_bound_from_coherence(1.5) <= re_upper_estimate(data, 1, 10, seed) + 1e-9);
  }
}
