#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mtgl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kUnitDiagonalTolerance = 1e-10;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One regression task: an n x M design and its length-n response.
struct Task {
  Matrix design;
  Vector response;
};

/**
 * T regression tasks sharing n observations and M variables.
 *
 * The stacked nT x MT block-diagonal design is never formed; every routine
 * works task by task. Construction validates shapes and records whether
 * every column satisfies (1/n) sum_i x_ij^2 = 1.
 */
class MultiTaskDataset {
 public:
  explicit MultiTaskDataset(std::vector<Task> tasks);

  std::size_t n() const { return n_; }
  std::size_t M() const { return m_; }
  std::size_t T() const { return tasks_.size(); }

  const Task& task(std::size_t t) const { return tasks_.at(t); }
  std::span<const Task> tasks() const { return tasks_; }

  bool unit_diagonal() const { return unit_diagonal_max_deviation_ <= kUnitDiagonalTolerance; }
  /// max over t, j of |(1/n) ||x_tj||^2 - 1|.
  double unit_diagonal_max_deviation() const { return unit_diagonal_max_deviation_; }

 private:
  std::vector<Task> tasks_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double unit_diagonal_max_deviation_ = 0.0;
};

/// M x T coefficient array; row j is the group beta^j shared across tasks,
/// column t is the task vector beta_t.
struct GroupCoefficients {
  Matrix values;

  static GroupCoefficients zeros(std::size_t M, std::size_t T) {
    return {Matrix::Zero(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(T))};
  }

  std::size_t M() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t T() const { return static_cast<std::size_t>(values.cols()); }

  double group_norm(std::size_t j) const { return values.row(static_cast<Eigen::Index>(j)).norm(); }
};

/// Sorted, duplicate-free set of 0-based variable indices.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  SparsityPattern(std::vector<std::size_t> indices, std::size_t M);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t j) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// ||beta||_{2,p} = (sum_j ||beta^j||^p)^{1/p}; p = kInfinity gives max_j ||beta^j||.
double mixed_norm(const GroupCoefficients& beta, double p);

/// (1/nT) sum_t ||X_t beta_t - y_t||^2.
double residual_error(const MultiTaskDataset& data, const GroupCoefficients& beta);

/// residual_error + 2 lambda ||beta||_{2,1}.
double objective(const MultiTaskDataset& data, const GroupCoefficients& beta, double lambda);

/// {j : ||beta^j|| > tol}.
SparsityPattern group_support(const GroupCoefficients& beta, double tol);

/// Throws dimension_error unless beta is M x T for this dataset.
void check_shape(const MultiTaskDataset& data, const GroupCoefficients& beta);

/// Per-task residuals y_t - X_t beta_t as columns of an n x T matrix.
Matrix residuals(const MultiTaskDataset& data, const GroupCoefficients& beta);

/// (X^T r) arranged as M x T: column t is X_t^T r_t.
Matrix correlate(const MultiTaskDataset& data, const Matrix& per_task_vectors);

}  // namespace mtgl
