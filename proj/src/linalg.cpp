#include "mtgl/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "mtgl/error.hpp"

namespace mtgl {

namespace {

// All-ones with a deterministic irregular tilt: a plain all-ones start is
// orthogonal to the top eigenvector of Grams such as [[1,-r],[-r,1]].
Vector start_vector(Eigen::Index size) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i + 1));
  return v.normalized();
}

}  // namespace

double largest_eigenvalue(const Matrix& sym, double rel_tol, int max_iterations) {
  if (sym.rows() != sym.cols()) throw dimension_error("largest_eigenvalue needs a square matrix");
  if (sym.rows() == 0) return 0.0;
  Vector v = start_vector(sym.rows());
  double rho = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Vector w = sym * v;
    rho = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    if ((w - rho * v).norm() <= rel_tol * std::abs(rho)) return rho;
    v = w / wn;
  }
  return rho;
}

Matrix task_gram(const MultiTaskDataset& data, std::size_t t) {
  const auto& x = data.task(t).design;
  Matrix gram = Matrix::Zero(x.cols(), x.cols());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  return gram / static_cast<double>(data.n());
}

double max_gram_eigenvalue(const MultiTaskDataset& data, double rel_tol) {
  double best = 0.0;
  for (std::size_t t = 0; t < data.T(); ++t) best = std::max(best, largest_eigenvalue(task_gram(data, t), rel_tol));
  return best;
}

}  // namespace mtgl
