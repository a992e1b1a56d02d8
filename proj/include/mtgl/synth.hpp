#pragma once

#include <cstdint>
#include <string_view>

#include "mtgl/model.hpp"

namespace mtgl {

enum class DesignKind { gaussian_iid, ar1, orthogonal };

/// orthogonal: X_t = sqrt(n) Q_t with Q_t the thin QR factor of a Gaussian
/// matrix, so X_t^T X_t / n = I. ar1: rows with Toeplitz covariance rho^|j-k|.
struct DesignSpec {
  DesignKind kind = DesignKind::gaussian_iid;
  double rho = 0.0;
  std::size_t n = 0;
  std::size_t M = 0;
  std::size_t T = 1;
  /// Rescale every column to (1/n) sum_i x_ij^2 = 1.
  bool normalize = true;
};

enum class AmplitudeRule { constant, gaussian };

/// positive: every active entry > 0; per_group: one random sign per group,
/// shared by all tasks; per_entry: independent random signs.
enum class SignRule { positive, per_group, per_entry };

/// Structured-sparse truth: s active groups drawn uniformly, shared by all tasks.
struct SignalSpec {
  std::size_t s = 1;
  AmplitudeRule rule = AmplitudeRule::constant;
  /// mu for the constant rule, standard deviation for the gaussian rule.
  double amplitude = 1.0;
  SignRule signs = SignRule::positive;
};

enum class NoiseKind { gaussian, student_t, rademacher };

/// Every kind has E[W^2] = sigma^2 exactly (student-t is rescaled by sqrt((nu-2)/nu)).
struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double sigma = 1.0;
  double nu = 3.0;
};

DesignKind parse_design_kind(std::string_view name);
AmplitudeRule parse_amplitude_rule(std::string_view name);
SignRule parse_sign_rule(std::string_view name);
NoiseKind parse_noise_kind(std::string_view name);

void validate(const DesignSpec& design);
void validate(const SignalSpec& signal, std::size_t M);
void validate(const NoiseSpec& noise);

struct SyntheticProblem {
  MultiTaskDataset data;
  GroupCoefficients beta_star;
  /// The noise actually added, n x T.
  Matrix noise;
};

/// T designs from per-task streams of `seed`.
std::vector<Matrix> generate_designs(const DesignSpec& design, std::uint64_t seed);

GroupCoefficients generate_beta(const SignalSpec& signal, std::size_t M, std::size_t T, std::uint64_t seed);

Matrix generate_noise(const NoiseSpec& noise, std::size_t n, std::size_t T, std::uint64_t seed);

/// y_t = X_t beta*_t + W_t with shared support across tasks.
SyntheticProblem generate_dataset(const DesignSpec& design, const SignalSpec& signal, const NoiseSpec& noise,
                                  std::uint64_t seed);

/// Same, with a caller-supplied truth.
SyntheticProblem generate_dataset(const DesignSpec& design, const GroupCoefficients& beta_star,
                                  const NoiseSpec& noise, std::uint64_t seed);

/**
 * Truth for support-recovery experiments: every active entry has magnitude
 * margin * tau, so each active group has ||beta^j|| / sqrt(T) = margin * tau.
 * The amplitude rule of `signal` is ignored; margin must exceed 2.
 */
GroupCoefficients generate_beta_for_selection(const SignalSpec& signal, std::size_t M, std::size_t T, double tau,
                                              double margin, std::uint64_t seed);

}  // namespace mtgl
