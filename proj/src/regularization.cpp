#include "mtgl/regularization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mtgl/error.hpp"

namespace mtgl {

NoiseRegime parse_regime(std::string_view name) {
  if (name == "gaussian") return NoiseRegime::gaussian;
  if (name == "finite-variance") return NoiseRegime::finite_variance;
  throw invalid_parameter("unknown regime '" + std::string(name) + "' (expected gaussian or finite-variance)");
}

std::string_view to_string(NoiseRegime r) { return r == NoiseRegime::gaussian ? "gaussian" : "finite-variance"; }

namespace {

void check_sizes(double sigma, std::size_t n, std::size_t T, std::size_t M, std::size_t min_M) {
  if (!(sigma > 0.0)) throw invalid_parameter("sigma must be positive");
  if (n < 1) throw invalid_parameter("n must be >= 1");
  if (T < 1) throw invalid_parameter("T must be >= 1");
  if (M < min_M) throw invalid_parameter("M must be >= " + std::to_string(min_M) + ", got " + std::to_string(M));
}

}  // namespace

RegularizationPlan lambda_gaussian(double sigma, std::size_t n, std::size_t T, std::size_t M, double A,
                                   TheoryCheck check) {
  check_sizes(sigma, n, T, M, 2);
  if (!(A > 0.0)) throw invalid_parameter("A must be positive");
  if (!(A > 8.0) && check == TheoryCheck::enforce) {
    throw invalid_parameter("A must exceed 8, got " + std::to_string(A));
  }
  RegularizationPlan plan;
  plan.regime = NoiseRegime::gaussian;
  plan.sigma = sigma;
  plan.A = A;
  plan.n = n;
  plan.T = T;
  plan.M = M;
  plan.outside_theory = !(A > 8.0);
  const double log_m = std::log(static_cast<double>(M));
  const double root_t = std::sqrt(static_cast<double>(T));
  plan.lambda = 2.0 * sigma / std::sqrt(static_cast<double>(n * T)) * std::sqrt(1.0 + A * log_m / root_t);
  plan.q = std::min(8.0 * log_m, A * root_t / 8.0);
  plan.confidence = 1.0 - std::pow(static_cast<double>(M), 1.0 - plan.q);
  plan.confidence_vacuous = plan.confidence <= 0.0;
  return plan;
}

double lambda_finite_variance(double sigma, std::size_t n, std::size_t T, std::size_t M, double delta) {
  check_sizes(sigma, n, T, M, 3);
  if (!(delta > 0.0)) throw invalid_parameter("delta must be positive");
  const double log_m = std::log(static_cast<double>(M));
  return sigma * std::sqrt(std::pow(log_m, 1.0 + delta) / static_cast<double>(n * T));
}

RegularizationPlan finite_variance_plan(double sigma, std::size_t n, std::size_t T, std::size_t M, double delta) {
  RegularizationPlan plan;
  plan.regime = NoiseRegime::finite_variance;
  plan.lambda = lambda_finite_variance(sigma, n, T, M, delta);
  plan.sigma = sigma;
  plan.A = 0.0;
  plan.delta = delta;
  plan.n = n;
  plan.T = T;
  plan.M = M;
  // Unknown until the design constant c' is measured.
  plan.confidence = 0.0;
  plan.confidence_vacuous = true;
  return plan;
}

Confidence finite_variance_confidence(std::size_t M, double delta, double c_prime) {
  if (M < 3) throw invalid_parameter("finite-variance confidence needs M >= 3");
  if (!(c_prime > 0.0)) throw invalid_parameter("c' must be positive");
  if (!(delta > 0.0)) throw invalid_parameter("delta must be positive");
  const double log_m = std::log(static_cast<double>(M));
  const double e = std::numbers::e;
  const double raw = 1.0 - (2.0 * e * log_m - e) * c_prime / std::pow(log_m, 1.0 + delta);
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

RegularizationPlan with_design_constant(RegularizationPlan plan, double c_prime) {
  if (plan.regime != NoiseRegime::finite_variance) throw invalid_parameter("design constant applies to finite-variance plans");
  const auto conf = finite_variance_confidence(plan.M, plan.delta, c_prime);
  plan.confidence = conf.value;
  plan.confidence_vacuous = conf.vacuous;
  return plan;
}

double threshold_constant_c(double alpha, double sigma, NoiseRegime regime) {
  if (!(sigma > 0.0)) throw invalid_parameter("sigma must be positive");
  if (!(alpha > 1.0)) throw invalid_parameter("alpha must exceed 1, got " + std::to_string(alpha));
  if (regime == NoiseRegime::gaussian) return (3.0 + 32.0 / (7.0 * (alpha - 1.0))) * sigma;
  return (1.5 + 1.0 / (7.0 * (alpha - 1.0))) * sigma;
}

double norm_bound_constant_c1(double alpha, double p) {
  if (!(alpha > 1.0)) throw invalid_parameter("alpha must exceed 1, got " + std::to_string(alpha));
  if (!(p >= 1.0)) throw invalid_parameter("p must be >= 1, got " + std::to_string(p));
  const double l21_part = 32.0 * alpha / (alpha - 1.0);
  const double sup_part = 3.0 + 32.0 / (7.0 * (alpha - 1.0));
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(l21_part, inv_p) * std::pow(sup_part, 1.0 - inv_p);
}

double deviation_scale(const RegularizationPlan& plan) {
  if (plan.n < 1 || plan.T < 1 || plan.M < 2) throw invalid_parameter("plan has invalid problem sizes");
  const double log_m = std::log(static_cast<double>(plan.M));
  const double n = static_cast<double>(plan.n);
  if (plan.regime == NoiseRegime::gaussian) {
    return std::sqrt(1.0 + plan.A * log_m / std::sqrt(static_cast<double>(plan.T))) / std::sqrt(n);
  }
  if (!(plan.delta > 0.0)) throw invalid_parameter("delta must be positive");
  return std::sqrt(std::pow(log_m, 1.0 + plan.delta) / n);
}

double selection_threshold(double c, const RegularizationPlan& plan) {
  if (!(c > 0.0)) throw invalid_parameter("threshold constant must be positive");
  return c * deviation_scale(plan);
}

}  // namespace mtgl
