#pragma once

#include "mtgl/model.hpp"

namespace mtgl {

/// Largest eigenvalue of a symmetric positive semidefinite matrix by power
/// iteration from a fixed start vector. Stops when the eigen-residual
/// ||A v - rho v|| falls to rel_tol * rho.
double largest_eigenvalue(const Matrix& sym, double rel_tol = 1e-9, int max_iterations = 1'000'000);

/// Per-task Gram matrix X_t^T X_t / n.
Matrix task_gram(const MultiTaskDataset& data, std::size_t t);

/// Largest eigenvalue of X^T X / n, i.e. the max over tasks of the per-task
/// Gram's largest eigenvalue (block-diagonal structure).
double max_gram_eigenvalue(const MultiTaskDataset& data, double rel_tol = 1e-9);

}  // namespace mtgl
