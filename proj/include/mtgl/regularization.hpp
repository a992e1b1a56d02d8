#pragma once

#include <cstddef>
#include <string_view>

namespace mtgl {

enum class NoiseRegime { gaussian, finite_variance };

NoiseRegime parse_regime(std::string_view name);
std::string_view to_string(NoiseRegime r);

/// Whether the hard preconditions of the theory (A > 8, alpha > 1) are enforced.
/// `explore` computes the formulas anyway and marks the output outside_theory.
enum class TheoryCheck { enforce, explore };

/**
 * The tuning parameter and the probability that comes with it.
 *
 * gaussian: lambda = 2 sigma / sqrt(nT) * sqrt(1 + A log M / sqrt(T)),
 *           q = min(8 log M, A sqrt(T) / 8), confidence = 1 - M^(1-q).
 * finite_variance: lambda = sigma sqrt((log M)^(1+delta) / (nT)); the
 *           confidence needs the design constant c' and is filled in by
 *           with_design_constant().
 * All logarithms are natural.
 */
struct RegularizationPlan {
  NoiseRegime regime = NoiseRegime::gaussian;
  double sigma = 1.0;
  double A = 9.0;
  double delta = 0.0;
  std::size_t n = 0;
  std::size_t T = 0;
  std::size_t M = 0;
  double lambda = 0.0;
  double q = 0.0;
  double confidence = 0.0;
  bool confidence_vacuous = false;
  bool outside_theory = false;
};

RegularizationPlan lambda_gaussian(double sigma, std::size_t n, std::size_t T, std::size_t M, double A,
                                   TheoryCheck check = TheoryCheck::enforce);

double lambda_finite_variance(double sigma, std::size_t n, std::size_t T, std::size_t M, double delta);

RegularizationPlan finite_variance_plan(double sigma, std::size_t n, std::size_t T, std::size_t M, double delta);

struct Confidence {
  double value = 0.0;
  /// Raw expression was negative; value is clamped to 0.
  bool vacuous = false;
};

/// 1 - (2e log M - e) c' / (log M)^(1+delta), clamped at 0.
Confidence finite_variance_confidence(std::size_t M, double delta, double c_prime);

/// Copy of a finite-variance plan with confidence evaluated at c'.
RegularizationPlan with_design_constant(RegularizationPlan plan, double c_prime);

/// gaussian: (3 + 32 / (7 (alpha - 1))) sigma;
/// finite_variance: (3/2 + 1 / (7 (alpha - 1))) sigma.
double threshold_constant_c(double alpha, double sigma, NoiseRegime regime);

/// (32 alpha / (alpha - 1))^(1/p) (3 + 32 / (7 (alpha - 1)))^(1 - 1/p); p may be infinite.
double norm_bound_constant_c1(double alpha, double p);

/// Rate shared by the per-group bounds and thresholds:
/// gaussian: sqrt(1 + A log M / sqrt(T)) / sqrt(n); finite_variance: sqrt((log M)^(1+delta) / n).
double deviation_scale(const RegularizationPlan& plan);

/// tau = c * deviation_scale(plan).
double selection_threshold(double c, const RegularizationPlan& plan);

}  // namespace mtgl
