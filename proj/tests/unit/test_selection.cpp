#include <doctest.h>

#include <random>

#include "mtgl/error.hpp"
#include "mtgl/selection.hpp"
#include "support.hpp"

using namespace mtgl;
using mtgl::testing::coefficients;

using Indices = std::vector<std::size_t>;

TEST_CASE("strict threshold semantics") {
  GroupCoefficients b = GroupCoefficients::zeros(3, 4);
  b.values.row(0).setConstant(0.9);  // norm 1.8, score 0.9
  b.values.row(1).setConstant(1.1);          // norm 2.2, score 1.1
  const auto r = select_support(b, 1.0);
  CHECK(r.selected.indices() == Indices{1});
  CHECK(r.group_scores(0) == doctest::Approx(0.9));
  CHECK(select_support(GroupCoefficients::zeros(3, 4), 1.0).selected.empty());
  GroupCoefficients exact = GroupCoefficients::zeros(2, 4);
  exact.values.row(0).setConstant(0.5);  // score exactly 0.5
  CHECK(select_support(exact, 0.5).selected.empty());
  CHECK(select_support(exact, 0.4999).selected.indices() == Indices{0});
  CHECK_THROWS_AS(select_support(exact, -1.0), invalid_parameter);
}

TEST_CASE("beta-min condition") {
  GroupCoefficients b = GroupCoefficients::zeros(3, 4);
  b.values.row(0).setConstant(2.5);
  CHECK(betamin_satisfied(b, 1.0));
  b.values.row(2).setConstant(1.5);
  CHECK_FALSE(betamin_satisfied(b, 1.0));
  CHECK(betamin_satisfied(GroupCoefficients::zeros(3, 4), 1.0));
}

TEST_CASE("average sign estimate") {
  const auto cancel = average_sign_estimate(coefficients({{1, -1}, {0, 0}}), 0.1);
  CHECK(cancel.a_hat(0) == 0.0);
  CHECK(cancel.a_tilde(0) == 0.0);
  CHECK(cancel.signs(0) == 0);
  const auto big = average_sign_estimate(coefficients({{3, 3}, {-0.5, -0.5}}), 1.0);
  CHECK(big.a_tilde(0) == doctest::Approx(3.0));
  CHECK(big.signs(0) == 1);
  CHECK(big.a_tilde(1) == 0.0);
  CHECK(big.signs(1) == 0);
  const auto neg = average_sign_estimate(coefficients({{-3, -3}, {0, 0}}), 1.0);
  CHECK(neg.signs(0) == -1);
}

TEST_CASE("selection scoring") {
  auto result_for = [](Indices selected, Indices truth) {
    SelectionResult r;
    r.selected = SparsityPattern(std::move(selected), 4);
    r.true_pattern = SparsityPattern(std::move(truth), 4);
    return score_selection(r);
  };
  auto a = result_for({0, 2}, {0, 2});
  CHECK(a.exact_recovery);
  CHECK(a.false_positives == 0);
  CHECK(a.false_negatives == 0);
  auto b = result_for({0}, {0, 2});
  CHECK_FALSE(b.exact_recovery);
  CHECK(b.false_negatives == 1);
  auto c = result_for({0, 1, 2}, {0, 2});
  CHECK_FALSE(c.exact_recovery);
  CHECK(c.false_positives == 1);
  CHECK(c.false_negatives == 0);
  CHECK_THROWS_AS(score_selection(SelectionResult{}), config_error);
}

TEST_CASE("selection is monotone in the threshold") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    GroupCoefficients b{mtgl::testing::gaussian_matrix(10, 3, rng)};
    double t1 = u(rng), t2 = u(rng);
    if (t1 > t2) std::swap(t1, t2);
    const auto small = select_support(b, t1).selected, large = select_support(b, t2).selected;
    for (std::size_t j : large.indices()) CHECK(small.contains(j));
  }
}

TEST_CASE("sup-norm closeness plus beta-min implies exact recovery") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t M = 12, T = 4;
  const double tau = 0.7;
  for (int trial = 0; trial < 300; ++trial) {
    GroupCoefficients star = GroupCoefficients::zeros(M, T);
    for (std::size_t j = 0; j < M; j += 3) {
      Vector row = mtgl::testing::gaussian_matrix(T, 1, rng).col(0);
      star.values.row(static_cast<Eigen::Index>(j)) = row.normalized() * (2.0 + 3.0 * u(rng)) * tau * 2.0;
    }
    REQUIRE(betamin_satisfied(star, tau));
    GroupCoefficients hat = star;
    for (std::size_t j = 0; j < M; ++j) {
      Vector e = mtgl::testing::gaussian_matrix(T, 1, rng).col(0);
      e *= u(rng) * tau * 2.0 / e.norm() * 0.999;  // per-row error norm below tau * sqrt(T)
      hat.values.row(static_cast<Eigen::Index>(j)) += e.transpose();
    }
    auto sel = select_support(hat, tau);
    CHECK(sel.selected == group_support(star, 0.0));
    // averages: |a_hat - a*| <= tau and |a*| >= 2 tau on J(a*) give the sign pattern
    const Vector a_star = star.values.rowwise().mean();
    const auto avg = average_sign_estimate(hat, tau);
    const bool close = ((avg.a_hat - a_star).cwiseAbs().maxCoeff() <= tau);
    bool separated = true;
    for (Eigen::Index j = 0; j < a_star.size(); ++j)
      if (a_star(j) != 0.0 && std::abs(a_star(j)) < 2 * tau) separated = false;
    if (close && separated) CHECK(avg.signs == sign_vector(a_star));
  }
}
