#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mtgl/model.hpp"

namespace mtgl {

enum class Algorithm { block_coordinate, proximal_gradient };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);

struct SolverConfig {
  double lambda = 0.0;
  Algorithm algorithm = Algorithm::block_coordinate;
  int max_iterations = 100'000;
  double kkt_tolerance = 1e-8;
  std::optional<GroupCoefficients> initial;
};

struct SolveResult {
  GroupCoefficients beta_hat;
  int iterations = 0;
  double kkt_residual = 0.0;
  /// Objective at the start and after every iteration.
  std::vector<double> objective_trace;
  bool converged = false;
};

/// Relative slack allowed before an objective increase counts as divergence.
inline constexpr double kObjectiveSlack = 1e-12;

/// Proximal map of tau ||.||: max(0, 1 - tau/||v||) v.
Vector block_soft_threshold(const Vector& v, double tau);

/// Scalar soft threshold sign(z) max(0, |z| - tau).
double soft_threshold(double z, double tau);

/**
 * Minimizes (1/nT) ||X beta - y||^2 + 2 lambda ||beta||_{2,1}.
 *
 * block_coordinate cycles j = 0..M-1 with the exact group update
 *   beta^j <- block_soft_threshold(z^j, lambda T),
 *   z_tj = x_tj^T (y_t - X_t beta_t + beta_tj x_tj) / n,
 * which is exact only for unit-diagonal designs. proximal_gradient takes
 * fixed steps T / (2 phi_max) and accepts any design. Both stop when
 * kkt_residual <= kkt_tolerance (checked after every sweep / step).
 */
SolveResult solve_group_lasso(const MultiTaskDataset& data, const SolverConfig& config);

/**
 * Max over groups of the violation of the optimality conditions, with
 * g = (1/nT) X^T (y - X beta):
 *   active j: ||g^j - lambda beta^j / ||beta^j|| ||
 *   zero j:   max(0, ||g^j|| - lambda).
 */
double kkt_residual(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda);

/// Smallest lambda for which beta = 0 solves the group problem:
/// max_j ||(X^T y)^j|| / (nT).
double lambda_zero(const MultiTaskDataset& data);

/**
 * Plain Lasso on the same data:
 *   min (1/nT) ||X beta - y||^2 + 2 lambda sum_{t,j} |beta_tj|
 * by cyclic coordinate descent (any design with nonzero columns). Since X is
 * block diagonal this is T independent single-task Lassos.
 */
SolveResult solve_lasso_baseline(const MultiTaskDataset& data, double lambda, int max_iterations = 100'000,
                                 double kkt_tolerance = 1e-8);

/// Entrywise analogue of kkt_residual for the plain Lasso.
double lasso_kkt_residual(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda);

/// (1/nT) sum_t ||X_t beta_t - y_t||^2 + 2 lambda sum |beta_tj|.
double lasso_objective(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda);

}  // namespace mtgl
