#pragma once

#include <Eigen/QR>

#include <random>
#include <vector>

#include "mtgl/model.hpp"

namespace mtgl::testing {

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

// X^T X / n = I
inline Matrix orthonormal_design(Eigen::Index n, Eigen::Index M, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(n, M, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(n, M);
  return q * std::sqrt(static_cast<double>(n));
}

inline Matrix unit_columns(Matrix x) {
  const double n = static_cast<double>(x.rows());
  for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j) *= std::sqrt(n) / x.col(j).norm();
  return x;
}

inline MultiTaskDataset make_dataset(const std::vector<Matrix>& designs, const std::vector<Vector>& responses) {
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < designs.size(); ++t) tasks.push_back({designs[t], responses[t]});
  return MultiTaskDataset(std::move(tasks));
}

inline MultiTaskDataset random_dataset(Eigen::Index n, Eigen::Index M, std::size_t T, std::uint64_t seed,
                                       bool orthonormal = false) {
  std::mt19937_64 rng(seed);
  std::vector<Task> tasks;
  for (std::size_t t = 0; t < T; ++t) {
    Matrix x = orthonormal ? orthonormal_design(n, M, rng) : unit_columns(gaussian_matrix(n, M, rng));
    Vector y = gaussian_matrix(n, 1, rng).col(0);
    tasks.push_back({x, y});
  }
  return MultiTaskDataset(std::move(tasks));
}

inline GroupCoefficients coefficients(std::initializer_list<std::initializer_list<double>> rows) {
  GroupCoefficients b = GroupCoefficients::zeros(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) b.values(i, j++) = v;
    ++i;
  }
  return b;
}

}  // namespace mtgl::testing
