#pragma once

#include <optional>

#include "mtgl/model.hpp"

namespace mtgl {

struct SelectionResult {
  SparsityPattern selected;
  double threshold = 0.0;
  /// ||beta_hat^j|| / sqrt(T) per group.
  Vector group_scores;
  std::optional<SparsityPattern> true_pattern;
};

/// Averages across tasks and their thresholded, signed version.
struct AverageEstimate {
  Vector a_hat;
  Vector a_tilde;
  double tau = 0.0;
  Eigen::VectorXi signs;
};

struct SelectionScore {
  bool exact_recovery = false;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

/// {j : ||beta_hat^j|| / sqrt(T) > tau}, strict.
SelectionResult select_support(const GroupCoefficients& beta_hat, double tau);

/// min over the true support of ||beta*^j|| / sqrt(T) exceeds 2 tau; vacuously true on an empty support.
bool betamin_satisfied(const GroupCoefficients& beta_star, double tau);

/// a_hat_j = mean_t beta_hat_tj, a_tilde_j = a_hat_j 1{|a_hat_j| > tau}, signs = sign(a_tilde).
AverageEstimate average_sign_estimate(const GroupCoefficients& beta_hat, double tau);

/// Compares the selected set with result.true_pattern (config_error when absent).
SelectionScore score_selection(const SelectionResult& result);

/// Entrywise sign in {-1, 0, +1}.
Eigen::VectorXi sign_vector(const Vector& v);

}  // namespace mtgl
