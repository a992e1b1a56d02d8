#include "mtgl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtgl/error.hpp"
#include "mtgl/linalg.hpp"

namespace mtgl {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "block-coordinate") return Algorithm::block_coordinate;
  if (name == "proximal-gradient") return Algorithm::proximal_gradient;
  throw invalid_parameter("unknown algorithm '" + std::string(name) +
                          "' (expected block-coordinate or proximal-gradient)");
}

std::string_view to_string(Algorithm a) {
  return a == Algorithm::block_coordinate ? "block-coordinate" : "proximal-gradient";
}

Vector block_soft_threshold(const Vector& v, double tau) {
  if (!(tau >= 0.0)) throw invalid_parameter("threshold must be nonnegative");
  const double norm = v.norm();
  if (norm <= tau) return Vector::Zero(v.size());
  return (1.0 - tau / norm) * v;
}

double soft_threshold(double z, double tau) {
  if (z > tau) return z - tau;
  if (z < -tau) return z + tau;
  return 0.0;
}

double kkt_residual(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda) {
  if (!(lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  const Matrix g = correlate(data, residuals(data, beta)) / static_cast<double>(data.n() * data.T());
  double worst = 0.0;
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    const double bn = beta.values.row(j).norm();
    double v = 0.0;
    if (bn > 0.0) {
      v = (g.row(j) - lambda * beta.values.row(j) / bn).norm();
    } else {
      v = std::max(0.0, g.row(j).norm() - lambda);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

double lambda_zero(const MultiTaskDataset& data) {
  Matrix y(static_cast<Eigen::Index>(data.n()), static_cast<Eigen::Index>(data.T()));
  for (std::size_t t = 0; t < data.T(); ++t) y.col(static_cast<Eigen::Index>(t)) = data.task(t).response;
  return correlate(data, y).rowwise().norm().maxCoeff() / static_cast<double>(data.n() * data.T());
}

namespace {

void validate(const MultiTaskDataset& data, const SolverConfig& config) {
  if (!(config.lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  if (config.max_iterations < 1) throw invalid_parameter("max_iterations must be >= 1");
  if (!(config.kkt_tolerance > 0.0)) throw invalid_parameter("kkt_tolerance must be positive");
  if (config.initial) check_shape(data, *config.initial);
}

void record(std::vector<double>& trace, double value) {
  if (!trace.empty()) {
    const double prev = trace.back();
    if (value > prev + kObjectiveSlack * std::max(1.0, std::abs(prev))) {
      throw internal_error("objective increased from " + std::to_string(prev) + " to " + std::to_string(value));
    }
  }
  trace.push_back(value);
}

SolveResult block_coordinate(const MultiTaskDataset& data, const SolverConfig& config) {
  if (!data.unit_diagonal()) {
    throw diagnostic_error("block-coordinate solver needs a unit-diagonal design (max deviation " +
                           std::to_string(data.unit_diagonal_max_deviation()) + "); use proximal-gradient");
  }
  const auto T = static_cast<Eigen::Index>(data.T());
  const double inv_n = 1.0 / static_cast<double>(data.n());
  const double tau = config.lambda * static_cast<double>(data.T());

  SolveResult result;
  result.beta_hat = config.initial.value_or(GroupCoefficients::zeros(data.M(), data.T()));
  Matrix r = residuals(data, result.beta_hat);
  record(result.objective_trace, objective(data, result.beta_hat, config.lambda));
  result.kkt_residual = kkt_residual(data, result.beta_hat, config.lambda);

  Vector z(T);
  while (result.kkt_residual > config.kkt_tolerance && result.iterations < config.max_iterations) {
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(data.M()); ++j) {
      for (Eigen::Index t = 0; t < T; ++t) {
        const auto& x = data.task(static_cast<std::size_t>(t)).design;
        z[t] = x.col(j).dot(r.col(t)) * inv_n + result.beta_hat.values(j, t);
      }
      const Vector updated = block_soft_threshold(z, tau);
      for (Eigen::Index t = 0; t < T; ++t) {
        const double delta = updated[t] - result.beta_hat.values(j, t);
        if (delta != 0.0) {
          r.col(t) -= delta * data.task(static_cast<std::size_t>(t)).design.col(j);
          result.beta_hat.values(j, t) = updated[t];
        }
      }
    }
    ++result.iterations;
    record(result.objective_trace, objective(data, result.beta_hat, config.lambda));
    result.kkt_residual = kkt_residual(data, result.beta_hat, config.lambda);
  }
  result.converged = result.kkt_residual <= config.kkt_tolerance;
  return result;
}

SolveResult proximal_gradient(const MultiTaskDataset& data, const SolverConfig& config) {
  const double phi_max = max_gram_eigenvalue(data);
  if (!(phi_max > 0.0)) throw diagnostic_error("design is identically zero");
  const double nT = static_cast<double>(data.n() * data.T());
  const double step = static_cast<double>(data.T()) / (2.0 * phi_max);
  const double tau = step * 2.0 * config.lambda;

  SolveResult result;
  result.beta_hat = config.initial.value_or(GroupCoefficients::zeros(data.M(), data.T()));
  record(result.objective_trace, objective(data, result.beta_hat, config.lambda));
  result.kkt_residual = kkt_residual(data, result.beta_hat, config.lambda);

  while (result.kkt_residual > config.kkt_tolerance && result.iterations < config.max_iterations) {
    // gradient of the loss is -(2/nT) X^T (y - X beta)
    const Matrix descent = correlate(data, residuals(data, result.beta_hat)) * (2.0 / nT);
    const Matrix point = result.beta_hat.values + step * descent;
    for (Eigen::Index j = 0; j < point.rows(); ++j) {
      result.beta_hat.values.row(j) = block_soft_threshold(point.row(j).transpose(), tau).transpose();
    }
    ++result.iterations;
    record(result.objective_trace, objective(data, result.beta_hat, config.lambda));
    result.kkt_residual = kkt_residual(data, result.beta_hat, config.lambda);
  }
  result.converged = result.kkt_residual <= config.kkt_tolerance;
  return result;
}

}  // namespace

SolveResult solve_group_lasso(const MultiTaskDataset& data, const SolverConfig& config) {
  validate(data, config);
  return config.algorithm == Algorithm::block_coordinate ? block_coordinate(data, config)
                                                         : proximal_gradient(data, config);
}

double lasso_objective(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda) {
  if (!(lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  return residual_error(data, beta) + 2.0 * lambda * beta.values.cwiseAbs().sum();
}

double lasso_kkt_residual(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda) {
  if (!(lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  const Matrix g = correlate(data, residuals(data, beta)) / static_cast<double>(data.n() * data.T());
  double worst = 0.0;
  for (Eigen::Index t = 0; t < g.cols(); ++t) {
    for (Eigen::Index j = 0; j < g.rows(); ++j) {
      const double b = beta.values(j, t);
      const double v = b != 0.0 ? std::abs(g(j, t) - lambda * (b > 0.0 ? 1.0 : -1.0))
                                : std::max(0.0, std::abs(g(j, t)) - lambda);
      worst = std::max(worst, v);
    }
  }
  return worst;
}

SolveResult solve_lasso_baseline(const MultiTaskDataset& data, double lambda, int max_iterations,
                                 double kkt_tolerance) {
  if (!(lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  if (max_iterations < 1) throw invalid_parameter("max_iterations must be >= 1");
  if (!(kkt_tolerance > 0.0)) throw invalid_parameter("kkt_tolerance must be positive");

  const double nT = static_cast<double>(data.n() * data.T());
  std::vector<Vector> col_sq(data.T());
  for (std::size_t t = 0; t < data.T(); ++t) {
    col_sq[t] = data.task(t).design.colwise().squaredNorm().transpose();
    if ((col_sq[t].array() == 0.0).any()) throw diagnostic_error("lasso baseline needs nonzero design columns");
  }

  SolveResult result;
  result.beta_hat = GroupCoefficients::zeros(data.M(), data.T());
  Matrix r = residuals(data, result.beta_hat);
  record(result.objective_trace, lasso_objective(data, result.beta_hat, lambda));
  result.kkt_residual = lasso_kkt_residual(data, result.beta_hat, lambda);

  // Coordinate update: minimize (1/nT)(d b^2 - 2 b x^T r_{-j}) + 2 lambda |b|
  // => b = soft(x^T r_{-j}, lambda nT) / d.
  while (result.kkt_residual > kkt_tolerance && result.iterations < max_iterations) {
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(data.T()); ++t) {
      const auto& x = data.task(static_cast<std::size_t>(t)).design;
      const Vector& d = col_sq[static_cast<std::size_t>(t)];
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double old = result.beta_hat.values(j, t);
        const double rho = x.col(j).dot(r.col(t)) + d[j] * old;
        const double updated = soft_threshold(rho, lambda * nT) / d[j];
        if (updated != old) {
          r.col(t) -= (updated - old) * x.col(j);
          result.beta_hat.values(j, t) = updated;
        }
      }
    }
    ++result.iterations;
    record(result.objective_trace, lasso_objective(data, result.beta_hat, lambda));
    result.kkt_residual = lasso_kkt_residual(data, result.beta_hat, lambda);
  }
  result.converged = result.kkt_residual <= kkt_tolerance;
  return result;
}

}  // namespace mtgl
