#include <doctest.h>

#include <cmath>
#include <random>

#include "mtgl/error.hpp"
#include "mtgl/model.hpp"
#include "support.hpp"

using namespace mtgl;
using mtgl::testing::coefficients;

TEST_CASE("dataset rejects inconsistent shapes") {
  CHECK_THROWS_AS(MultiTaskDataset({}), dimension_error);
  CHECK_THROWS_AS(MultiTaskDataset({{Matrix::Ones(3, 1), Vector::Ones(3)}}), dimension_error);
  CHECK_THROWS_AS(MultiTaskDataset({{Matrix::Ones(3, 2), Vector::Ones(2)}}), dimension_error);
  CHECK_THROWS_AS(MultiTaskDataset({{Matrix::Ones(3, 2), Vector::Ones(3)}, {Matrix::Ones(3, 3), Vector::Ones(3)}}),
                  dimension_error);
  CHECK_THROWS_AS(MultiTaskDataset({{Matrix::Ones(3, 2), Vector::Ones(3)}, {Matrix::Ones(4, 2), Vector::Ones(4)}}),
                  dimension_error);
}

TEST_CASE("unit diagonal flag") {
  MultiTaskDataset ones({{Matrix::Ones(4, 2), Vector::Zero(4)}});
  CHECK(ones.unit_diagonal());
  Matrix x = Matrix::Ones(4, 2);
  x(0, 1) = 1.0 + 1e-6;
  MultiTaskDataset off({{x, Vector::Zero(4)}});
  CHECK_FALSE(off.unit_diagonal());
  CHECK(off.unit_diagonal_max_deviation() > 1e-7);
}

TEST_CASE("mixed norm examples") {
  CHECK(mixed_norm(coefficients({{3, 4}, {0, 0}}), 1) == doctest::Approx(5));
  const auto unit = coefficients({{1, 0}, {0, 1}});
  CHECK(mixed_norm(unit, 1) == doctest::Approx(2));
  CHECK(mixed_norm(unit, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(mixed_norm(unit, kInfinity) == doctest::Approx(1));
  std::mt19937_64 rng(3);
  GroupCoefficients b{mtgl::testing::gaussian_matrix(4, 3, rng)};
  CHECK(mixed_norm(b, 2) == doctest::Approx(b.values.norm()).epsilon(1e-14));
  CHECK_THROWS_AS(mixed_norm(b, 0.5), invalid_parameter);
}

TEST_CASE("mixed norm ordering, interpolation, triangle inequality and homogeneity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pick(1.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    GroupCoefficients a{mtgl::testing::gaussian_matrix(6, 3, rng)};
    GroupCoefficients b{mtgl::testing::gaussian_matrix(6, 3, rng)};
    if (trial % 3 == 0) a.values.row(trial % 6).setZero();
    const double p = pick(rng);
    const double n1 = mixed_norm(a, 1), np = mixed_norm(a, p), ninf = mixed_norm(a, kInfinity);
    CHECK(ninf <= np * (1 + 1e-12));
    CHECK(np <= n1 * (1 + 1e-12));
    CHECK(np <= std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p) * (1 + 1e-12));
    for (double q : {1.0, p, kInfinity}) {
      GroupCoefficients sum{a.values + b.values};
      CHECK(mixed_norm(sum, q) <= (mixed_norm(a, q) + mixed_norm(b, q)) * (1 + 1e-12));
      GroupCoefficients scaled{-2.5 * a.values};
      CHECK(mixed_norm(scaled, q) == doctest::Approx(2.5 * mixed_norm(a, q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("residual error and objective examples") {
  Matrix x(1, 2);
  x << 2, 0;
  Vector y(1);
  y << 3;
  MultiTaskDataset single({{x, y}});
  CHECK(residual_error(single, coefficients({{1}, {0}})) == doctest::Approx(1.0));

  auto data = mtgl::testing::random_dataset(10, 5, 3, 7);
  const auto zero = GroupCoefficients::zeros(5, 3);
  double y2 = 0;
  for (const auto& t : data.tasks()) y2 += t.response.squaredNorm();
  CHECK(residual_error(data, zero) == doctest::Approx(y2 / 30.0));
  CHECK(objective(data, zero, 0.7) == doctest::Approx(y2 / 30.0));

  // perfect fit
  std::mt19937_64 rng(5);
  GroupCoefficients beta{mtgl::testing::gaussian_matrix(5, 3, rng)};
  std::vector<Task> fitted;
  for (std::size_t t = 0; t < 3; ++t) {
    const Matrix& xt = data.task(t).design;
    fitted.push_back({xt, xt * beta.values.col(static_cast<Eigen::Index>(t))});
  }
  MultiTaskDataset exact(std::move(fitted));
  CHECK(residual_error(exact, beta) == doctest::Approx(0.0).epsilon(1e-20));
  CHECK(objective(exact, beta, 0.3) == doctest::Approx(2 * 0.3 * mixed_norm(beta, 1)));
  CHECK(objective(data, beta, 0.3) ==
        doctest::Approx(residual_error(data, beta) + 2 * 0.3 * mixed_norm(beta, 1)).epsilon(1e-14));
  CHECK_THROWS_AS(residual_error(data, GroupCoefficients::zeros(4, 3)), dimension_error);
  CHECK_THROWS_AS(objective(data, zero, -1.0), invalid_parameter);
}

TEST_CASE("residual error is invariant to task order") {
  auto data = mtgl::testing::random_dataset(8, 4, 3, 21);
  std::mt19937_64 rng(2);
  GroupCoefficients beta{mtgl::testing::gaussian_matrix(4, 3, rng)};
  std::vector<Task> reversed;
  GroupCoefficients beta_rev = beta;
  for (std::size_t t = 0; t < 3; ++t) {
    reversed.push_back(data.task(2 - t));
    beta_rev.values.col(static_cast<Eigen::Index>(t)) = beta.values.col(static_cast<Eigen::Index>(2 - t));
  }
  MultiTaskDataset other(std::move(reversed));
  CHECK(residual_error(other, beta_rev) == doctest::Approx(residual_error(data, beta)).epsilon(1e-14));
  CHECK(objective(other, beta_rev, 0.2) == doctest::Approx(objective(data, beta, 0.2)).epsilon(1e-14));
}

TEST_CASE("group support threshold semantics") {
  CHECK(group_support(GroupCoefficients::zeros(3, 2), 0).empty());
  const auto b = coefficients({{0, 0}, {1e-12, 0}, {0.3, 0.4}});
  CHECK(group_support(b, 1e-9).indices() == std::vector<std::size_t>{2});
  CHECK(group_support(coefficients({{0, 0}, {0, -2}, {0, 0}}), 0).indices() == std::vector<std::size_t>{1});
}

TEST_CASE("sparsity pattern validation") {
  SparsityPattern p({3, 0}, 4);
  CHECK(p.indices() == std::vector<std::size_t>{0, 3});
  CHECK(p.contains(3));
  CHECK_FALSE(p.contains(1));
  CHECK_THROWS_AS(SparsityPattern({1, 1}, 4), invalid_parameter);
  CHECK_THROWS_AS(SparsityPattern({4}, 4), invalid_parameter);
}

TEST_CASE("correlate stacks per-task products") {
  auto data = mtgl::testing::random_dataset(6, 3, 2, 9);
  std::mt19937_64 rng(1);
  Matrix v = mtgl::testing::gaussian_matrix(6, 2, rng);
  Matrix c = correlate(data, v);
  for (Eigen::Index t = 0; t < 2; ++t) {
    Vector expect = data.task(static_cast<std::size_t>(t)).design.transpose() * v.col(t);
    CHECK((c.col(t) - expect).norm() < 1e-12);
  }
}
