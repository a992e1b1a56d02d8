#include "mtgl/selection.hpp"

#include <cmath>
#include <limits>

#include "mtgl/error.hpp"

namespace mtgl {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0)) throw invalid_parameter("threshold must be positive");
}

}  // namespace

SelectionResult select_support(const GroupCoefficients& beta_hat, double tau) {
  check_tau(tau);
  SelectionResult result;
  result.threshold = tau;
  result.group_scores = beta_hat.values.rowwise().norm() / std::sqrt(static_cast<double>(beta_hat.T()));
  std::vector<std::size_t> chosen;
  for (Eigen::Index j = 0; j < result.group_scores.size(); ++j) {
    if (result.group_scores[j] > tau) chosen.push_back(static_cast<std::size_t>(j));
  }
  result.selected = SparsityPattern(std::move(chosen), beta_hat.M());
  return result;
}

bool betamin_satisfied(const GroupCoefficients& beta_star, double tau) {
  check_tau(tau);
  double min_score = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < beta_star.M(); ++j) {
    const double norm = beta_star.group_norm(j);
    if (norm > 0.0) min_score = std::min(min_score, norm);
  }
  if (std::isinf(min_score)) return true;
  return min_score / std::sqrt(static_cast<double>(beta_star.T())) > 2.0 * tau;
}

Eigen::VectorXi sign_vector(const Vector& v) {
  Eigen::VectorXi s(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) s[j] = (v[j] > 0.0) - (v[j] < 0.0);
  return s;
}

AverageEstimate average_sign_estimate(const GroupCoefficients& beta_hat, double tau) {
  check_tau(tau);
  AverageEstimate est;
  est.tau = tau;
  est.a_hat = beta_hat.values.rowwise().mean();
  est.a_tilde = est.a_hat;
  for (Eigen::Index j = 0; j < est.a_tilde.size(); ++j) {
    if (!(std::abs(est.a_hat[j]) > tau)) est.a_tilde[j] = 0.0;
  }
  est.signs = sign_vector(est.a_tilde);
  return est;
}

SelectionScore score_selection(const SelectionResult& result) {
  if (!result.true_pattern) throw config_error("selection scoring needs the true sparsity pattern");
  const auto& truth = *result.true_pattern;
  SelectionScore score;
  for (std::size_t j : result.selected.indices()) {
    if (!truth.contains(j)) ++score.false_positives;
  }
  for (std::size_t j : truth.indices()) {
    if (!result.selected.contains(j)) ++score.false_negatives;
  }
  score.exact_recovery = score.false_positives == 0 && score.false_negatives == 0;
  return score;
}

}  // namespace mtgl
