#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mtgl/error.hpp"
#include "mtgl/model.hpp"
#include "mtgl/regularization.hpp"

using namespace mtgl;
using doctest::Approx;

TEST_CASE("gaussian lambda example") {
  const auto plan = lambda_gaussian(1.0, 100, 4, 10, 9.0);
  CHECK(plan.lambda == Approx(0.33708).epsilon(1e-5));
  CHECK(plan.q == Approx(2.25));
  CHECK(plan.confidence == Approx(0.94376).epsilon(1e-5));
  // direct evaluation
  const double l = std::log(10.0);
  CHECK(plan.lambda == Approx(2.0 / std::sqrt(400.0) * std::sqrt(1 + 9 * l / 2)).epsilon(1e-15));
  CHECK(plan.confidence == Approx(1 - std::pow(10.0, 1 - 2.25)).epsilon(1e-15));
  CHECK_FALSE(plan.outside_theory);
}

TEST_CASE("gaussian q takes the log cap for large T") {
  const auto plan = lambda_gaussian(1.0, 10, 1'000'000, 3, 9.0);
  CHECK(plan.q == Approx(8 * std::log(3.0)));
}

TEST_CASE("gaussian lambda limits and homogeneity") {
  const double T = 1e6;
  const auto big = lambda_gaussian(1.0, 50, 1'000'000, 10, 9.0);
  CHECK(big.lambda / (2.0 / std::sqrt(50.0 * T)) == Approx(1.0).epsilon(0.02));
  const auto a = lambda_gaussian(1.0, 100, 4, 10, 9.0), b = lambda_gaussian(2.0, 100, 4, 10, 9.0);
  CHECK(b.lambda == Approx(2 * a.lambda));
  CHECK(b.q == a.q);
  // log M / sqrt(T) large
  const auto wide = lambda_gaussian(1.0, 10, 1, 1'000'000'000, 9.0);
  const double asym = 2 * std::sqrt(9.0 * std::log(1e9)) / std::sqrt(10.0);
  CHECK(wide.lambda / asym == Approx(1.0).epsilon(0.01));
}

TEST_CASE("gaussian confidence increases with T until the cap") {
  double prev = 0.0;
  for (std::size_t T = 1; T <= 4096; T *= 2) {
    const auto p = lambda_gaussian(1.0, 10, T, 10, 9.0);
    if (p.q > 1.0) CHECK(p.confidence > 0.0);
    CHECK(p.confidence <= 1.0);
    CHECK(p.confidence >= prev);
    prev = p.confidence;
  }
}

TEST_CASE("gaussian lambda validation and explore mode") {
  CHECK_THROWS_AS(lambda_gaussian(1.0, 100, 4, 10, 8.0), invalid_parameter);
  CHECK_THROWS_AS(lambda_gaussian(0.0, 100, 4, 10, 9.0), invalid_parameter);
  CHECK_THROWS_AS(lambda_gaussian(1.0, 0, 4, 10, 9.0), invalid_parameter);
  CHECK_THROWS_AS(lambda_gaussian(1.0, 100, 4, 1, 9.0), invalid_parameter);
  const auto p = lambda_gaussian(1.0, 100, 4, 10, 4.0, TheoryCheck::explore);
  CHECK(p.outside_theory);
  CHECK(p.lambda > 0.0);
}

TEST_CASE("finite variance lambda") {
  // the quoted 0.40045 is rounded loosely; direct evaluation gives 0.400378
  CHECK(lambda_finite_variance(1.0, 100, 9, 32, 3.0) == Approx(0.40045).epsilon(1e-3));
  CHECK(lambda_finite_variance(1.0, 100, 9, 32, 3.0) ==
        Approx(std::sqrt(std::pow(std::log(32.0), 4) / 900.0)).epsilon(1e-15));
  CHECK(lambda_finite_variance(1.0, 100, 9, 32, 1e-9) == Approx(std::sqrt(std::log(32.0) / 900.0)).epsilon(1e-6));
  CHECK(lambda_finite_variance(1.0, 400, 9, 32, 3.0) == Approx(0.5 * lambda_finite_variance(1.0, 100, 9, 32, 3.0)));
  CHECK_THROWS_AS(lambda_finite_variance(1.0, 100, 9, 32, 0.0), invalid_parameter);
  CHECK_THROWS_AS(lambda_finite_variance(1.0, 100, 9, 2, 1.0), invalid_parameter);
}

TEST_CASE("finite variance confidence") {
  const double l = std::log(32.0), e = std::numbers::e;
  const auto c = finite_variance_confidence(32, 3.0, 1.0);
  CHECK(c.value == Approx(0.8883).epsilon(1e-4));
  CHECK(c.value == Approx(1 - (2 * e * l - e) / std::pow(l, 4)).epsilon(1e-15));
  CHECK_FALSE(c.vacuous);
  CHECK(finite_variance_confidence(32, 3.0, 1e-12).value == Approx(1.0));
  const auto small = finite_variance_confidence(3, 0.1, 1.0);
  CHECK(small.vacuous);
  CHECK(small.value == 0.0);
  const auto plan = with_design_constant(finite_variance_plan(1.0, 100, 9, 32, 3.0), 1.0);
  CHECK(plan.confidence == Approx(c.value));
}

TEST_CASE("threshold constants") {
  CHECK(threshold_constant_c(2.0, 1.0, NoiseRegime::gaussian) == Approx(7.5714).epsilon(1e-4));
  CHECK(threshold_constant_c(2.0, 1.0, NoiseRegime::finite_variance) == Approx(1.6429).epsilon(1e-4));
  CHECK(threshold_constant_c(2.0, 3.0, NoiseRegime::gaussian) == Approx(3 * (3 + 32.0 / 7)));
  for (auto regime : {NoiseRegime::gaussian, NoiseRegime::finite_variance}) {
    double prev = kInfinity;
    for (double a = 1.1; a < 100; a *= 1.5) {
      const double c = threshold_constant_c(a, 1.0, regime);
      CHECK(c < prev);
      prev = c;
    }
  }
  CHECK_THROWS_AS(threshold_constant_c(1.0, 1.0, NoiseRegime::gaussian), invalid_parameter);
}

TEST_CASE("mixed norm constant c1") {
  CHECK(norm_bound_constant_c1(2.0, 1.0) == Approx(64.0));
  CHECK(norm_bound_constant_c1(2.0, 2.0) == Approx(22.013).epsilon(1e-4));
  CHECK(norm_bound_constant_c1(2.0, 2.0) == Approx(8 * std::sqrt(3 + 32.0 / 7)).epsilon(1e-15));
  CHECK(norm_bound_constant_c1(2.0, 1e9) == Approx(3 + 32.0 / 7).epsilon(1e-6));
  CHECK(norm_bound_constant_c1(2.0, kInfinity) == Approx(3 + 32.0 / 7));
  CHECK_THROWS_AS(norm_bound_constant_c1(2.0, 0.5), invalid_parameter);
}

TEST_CASE("selection threshold") {
  const auto g = lambda_gaussian(1.0, 100, 4, 10, 9.0);
  const double c = threshold_constant_c(2.0, 1.0, NoiseRegime::gaussian);
  CHECK(selection_threshold(7.5714, g) == Approx(2.5522).epsilon(1e-4));
  CHECK(selection_threshold(c, g) == Approx(c / 10 * std::sqrt(1 + 9 * std::log(10.0) / 2)).epsilon(1e-15));
  const auto g4 = lambda_gaussian(1.0, 400, 4, 10, 9.0);
  CHECK(selection_threshold(c, g4) == Approx(0.5 * selection_threshold(c, g)));
  const auto f = finite_variance_plan(1.0, 100, 9, 32, 3.0);
  CHECK(selection_threshold(1.6429, f) == Approx(1.9735).epsilon(1e-4));
}

TEST_CASE("pure functions are bit-identical on recomputation") {
  const auto a = lambda_gaussian(1.3, 77, 5, 41, 9.5), b = lambda_gaussian(1.3, 77, 5, 41, 9.5);
  CHECK(a.lambda == b.lambda);
  CHECK(a.confidence == b.confidence);
  CHECK(parse_regime("finite-variance") == NoiseRegime::finite_variance);
  CHECK_THROWS_AS(parse_regime("cauchy"), invalid_parameter);
}
