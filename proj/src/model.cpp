#include "mtgl/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mtgl/error.hpp"

namespace mtgl {

MultiTaskDataset::MultiTaskDataset(std::vector<Task> tasks) : tasks_(std::move(tasks)) {
  if (tasks_.empty()) throw dimension_error("dataset needs at least one task");
  n_ = static_cast<std::size_t>(tasks_.front().design.rows());
  m_ = static_cast<std::size_t>(tasks_.front().design.cols());
  if (n_ < 1) throw dimension_error("dataset needs n >= 1");
  if (m_ < 2) throw dimension_error("dataset needs M >= 2, got " + std::to_string(m_));
  for (std::size_t t = 0; t < tasks_.size(); ++t) {
    const auto& task = tasks_[t];
    if (static_cast<std::size_t>(task.design.rows()) != n_ ||
        static_cast<std::size_t>(task.design.cols()) != m_) {
      throw dimension_error("task " + std::to_string(t + 1) + " design is " +
                            std::to_string(task.design.rows()) + "x" + std::to_string(task.design.cols()) +
                            ", expected " + std::to_string(n_) + "x" + std::to_string(m_));
    }
    if (static_cast<std::size_t>(task.response.size()) != n_) {
      throw dimension_error("task " + std::to_string(t + 1) + " response has length " +
                            std::to_string(task.response.size()) + ", expected " + std::to_string(n_));
    }
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (Eigen::Index j = 0; j < task.design.cols(); ++j) {
      const double diag = task.design.col(j).squaredNorm() * inv_n;
      unit_diagonal_max_deviation_ = std::max(unit_diagonal_max_deviation_, std::abs(diag - 1.0));
    }
  }
}

SparsityPattern::SparsityPattern(std::vector<std::size_t> indices, std::size_t M) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw invalid_parameter("sparsity pattern has duplicate indices");
  }
  if (!indices_.empty() && indices_.back() >= M) {
    throw invalid_parameter("sparsity pattern index " + std::to_string(indices_.back()) + " out of range for M=" +
                            std::to_string(M));
  }
}

bool SparsityPattern::contains(std::size_t j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

double mixed_norm(const GroupCoefficients& beta, double p) {
  if (!(p >= 1.0)) throw invalid_parameter("mixed norm needs p >= 1, got " + std::to_string(p));
  const Vector norms = beta.values.rowwise().norm();
  if (norms.size() == 0) return 0.0;
  if (std::isinf(p)) return norms.maxCoeff();
  if (p == 1.0) return norms.sum();
  if (p == 2.0) return beta.values.norm();
  // Scale by the largest group norm so large p does not overflow.
  const double scale = norms.maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < norms.size(); ++j) acc += std::pow(norms[j] / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

void check_shape(const MultiTaskDataset& data, const GroupCoefficients& beta) {
  if (beta.M() != data.M() || beta.T() != data.T()) {
    throw dimension_error("coefficients are " + std::to_string(beta.M()) + "x" + std::to_string(beta.T()) +
                          ", dataset expects " + std::to_string(data.M()) + "x" + std::to_string(data.T()));
  }
}

Matrix residuals(const MultiTaskDataset& data, const GroupCoefficients& beta) {
  check_shape(data, beta);
  Matrix r(static_cast<Eigen::Index>(data.n()), static_cast<Eigen::Index>(data.T()));
  for (std::size_t t = 0; t < data.T(); ++t) {
    const auto& task = data.task(t);
    const auto col = static_cast<Eigen::Index>(t);
    r.col(col) = task.response - task.design * beta.values.col(col);
  }
  return r;
}

Matrix correlate(const MultiTaskDataset& data, const Matrix& per_task_vectors) {
  Matrix out(static_cast<Eigen::Index>(data.M()), static_cast<Eigen::Index>(data.T()));
  for (std::size_t t = 0; t < data.T(); ++t) {
    const auto col = static_cast<Eigen::Index>(t);
    out.col(col).noalias() = data.task(t).design.transpose() * per_task_vectors.col(col);
  }
  return out;
}

double residual_error(const MultiTaskDataset& data, const GroupCoefficients& beta) {
  return residuals(data, beta).squaredNorm() / static_cast<double>(data.n() * data.T());
}

double objective(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda) {
  if (!(lambda > 0.0)) throw invalid_parameter("lambda must be positive");
  return residual_error(data, beta) + 2.0 * lambda * mixed_norm(beta, 1.0);
}

SparsityPattern group_support(const GroupCoefficients& beta, double tol) {
  if (!(tol >= 0.0)) throw invalid_parameter("support tolerance must be nonnegative");
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < beta.M(); ++j) {
    if (beta.group_norm(j) > tol) active.push_back(j);
  }
  return SparsityPattern(std::move(active), beta.M());
}

}  // namespace mtgl
