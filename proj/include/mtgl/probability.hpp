#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "mtgl/model.hpp"
#include "mtgl/regularization.hpp"

namespace mtgl {

/// Monte Carlo check of an analytic upper bound.
/// pass iff empirical_frequency <= analytic_bound + 3 standard_error.
struct TailCheckReport {
  double analytic_bound = 0.0;
  double empirical_frequency = 0.0;
  std::size_t replicates = 0;
  double standard_error = 0.0;
  bool pass = false;
};

/// exp(-min(x, x^2 / T) / 8), bounding Pr(chi2_T > T + x).
double chi_square_tail_bound(std::size_t T, double x);

/// Frequency of sum_{k<T} N_k^2 > T + x over `replicates` draws (>= 1000).
TailCheckReport chi_square_tail_empirical(std::size_t T, double x, std::size_t replicates, std::uint64_t seed,
                                          std::size_t threads = 1);

enum class CoordinateDistribution { rademacher, gaussian, degenerate };

CoordinateDistribution parse_coordinate_distribution(std::string_view name);

/**
 * Nemirovski-type moment inequality for i.i.d. zero-mean vectors Y_1..Y_n in R^M:
 *   E |sum Y_i|_inf^2 <= (2e log M - e) sum E |Y_i|_inf^2.
 * empirical_frequency holds the Monte Carlo left side, analytic_bound the
 * constant times the Monte Carlo right side, and standard_error the standard
 * error of their per-replicate difference.
 */
TailCheckReport nemirovski_check(std::size_t M, std::size_t n_vectors, CoordinateDistribution distribution,
                                 std::size_t replicates, std::uint64_t seed, std::size_t threads = 1);

/// 2e log M - e.
double nemirovski_constant(std::size_t M);

/// (1/nT) max_j sqrt(sum_t (x_tj^T w_t)^2) for noise columns w_t.
double noise_correlation_norm(const MultiTaskDataset& data, const Matrix& noise);

/**
 * Frequency of the complement of the concentration event
 *   (1/nT) ||X^T W||_{2,inf} <= lambda / 2
 * under Gaussian noise N(0, sigma^2) with sigma and lambda taken from the
 * plan; the analytic bound is M^(1-q).
 */
TailCheckReport event_A_violation_rate(const MultiTaskDataset& data, const RegularizationPlan& plan,
                                       std::size_t replicates, std::uint64_t seed, std::size_t threads = 1);

}  // namespace mtgl
