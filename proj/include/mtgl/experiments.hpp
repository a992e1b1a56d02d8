#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtgl/assumptions.hpp"
#include "mtgl/regularization.hpp"
#include "mtgl/solver.hpp"
#include "mtgl/synth.hpp"

namespace mtgl {

/// Where the RE constant in the bound right-hand sides comes from. Sampled
/// upper estimates are never used: they would shrink the denominators.
enum class KappaSource { coherence_lemma, orthogonal, user_supplied };

KappaSource parse_kappa_source(std::string_view name);
std::string_view to_string(KappaSource k);

enum class ExperimentKind { oracle, selection, lasso_comparison };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::oracle;
  DesignSpec design;
  SignalSpec signal;
  NoiseSpec noise;
  NoiseRegime regime = NoiseRegime::gaussian;
  /// Noise level the plan assumes; defaults to noise.sigma.
  std::optional<double> sigma;
  double A = 9.0;
  double delta = 3.0;
  /// Coherence parameter; drives kappa (coherence route) and the sup-norm constants.
  double alpha = 8.0;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  KappaSource kappa_source = KappaSource::orthogonal;
  double kappa = 1.0;
  std::optional<double> kappa2s;
  std::vector<double> p_values;
  /// Names of bounds to evaluate; empty means every bound available for the regime.
  std::vector<std::string> bounds;
  Algorithm algorithm = Algorithm::block_coordinate;
  double kkt_tolerance = 1e-9;
  int max_iterations = 100'000;
  // selection experiments
  double margin = 2.5;
  /// Replaces the selection threshold only; the truth is still sized by the theory threshold.
  std::optional<double> threshold_override;
  // lasso comparison
  std::vector<std::size_t> T_grid{1, 4, 16};
  double A_L = 3.0;
  double min_win_fraction = 0.9;
  std::size_t threads = 1;
};

struct ResolvedKappa {
  double kappa = 1.0;
  std::optional<double> kappa2s;
  std::string provenance;
};

struct BoundRhs {
  std::string name;
  double rhs = 0.0;
};

/**
 * Right-hand sides of the oracle inequalities for a plan.
 *
 * gaussian (r = sqrt(1 + A log M / sqrt(T))):
 *   prediction   64 sigma^2 / kappa^2 * s / n * r^2
 *   l21_error    32 sigma / kappa^2 * s / sqrt(n) * r
 *   sparsity     64 phi_max / kappa^2 * s
 *   l2_error     8 sqrt(10) sigma / kappa2s^2 * sqrt(s / n) * r
 *   correlation  3/2 lambda
 *   sup_norm, average   c / sqrt(n) * r           (needs alpha)
 *   mixed_norm_p<p>     c1(alpha, p) sigma s^(1/p) / sqrt(n) * r
 * finite_variance (L = (log M)^(1+delta)):
 *   prediction   16 / kappa^2 * sigma^2 s L / n
 *   l21_error    16 / kappa^2 * sigma s sqrt(L / n)
 *   sparsity     64 phi_max / kappa^2 * s
 *   l2_error     sqrt(160) / kappa2s^2 * sigma sqrt(s L / n)
 *   sup_norm     c sqrt(L / n)
 * l2_error is present only when kappa2s is given; the alpha-dependent rows
 * only when alpha is given.
 */
std::vector<BoundRhs> oracle_bounds_rhs(const RegularizationPlan& plan, std::size_t s, double kappa,
                                        std::optional<double> kappa2s, double phi_max,
                                        std::optional<double> alpha = std::nullopt,
                                        const std::vector<double>& p_values = {});

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ReplicateMetrics {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t T = 0;
  double prediction_error = 0.0;
  double err_21 = 0.0;
  double err_2 = 0.0;
  double err_2inf = 0.0;
  std::vector<double> err_2p;
  double average_error = 0.0;
  std::size_t m_hat = 0;
  double correlation_stat = 0.0;
  bool support_exact = false;
  bool sign_exact = false;
  double phi_max = 0.0;
  double c_prime = 0.0;
  double confidence = 0.0;
  bool converged = false;
  int iterations = 0;
  double kkt_residual = 0.0;
  std::vector<BoundCheck> checks;
  // lasso comparison only
  double lasso_prediction_error = 0.0;
  bool lasso_converged = false;
};

/// Per-bound (or per-event) aggregate over replicates.
struct CoverageSummary {
  std::string name;
  /// Mean right-hand side; NaN for events without one.
  double rhs_value = 0.0;
  double coverage = 0.0;
  double required_confidence = 0.0;
  /// Largest observed lhs / rhs, to make slack visible.
  double max_ratio = 0.0;
  bool pass = false;
};

struct LassoComparisonRow {
  std::size_t T = 0;
  double group_mean_error = 0.0;
  double lasso_mean_error = 0.0;
  double ratio = 0.0;
  double win_fraction = 0.0;
  std::vector<bool> wins;
};

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::oracle;
  RegularizationPlan plan;
  ResolvedKappa kappa;
  std::optional<double> threshold;
  std::vector<ReplicateMetrics> replicates;
  std::vector<CoverageSummary> coverage;
  std::vector<LassoComparisonRow> lasso_comparison;
  std::size_t non_converged = 0;

  bool all_pass() const;
  const CoverageSummary* find(std::string_view name) const;
};

/// Coverage needed to pass: required - 3 sqrt(required (1 - required) / replicates).
double coverage_floor(double required, std::size_t replicates);

RegularizationPlan make_plan(const ExperimentConfig& config, std::size_t T);

/// Resolves kappa for a design; throws config_error when the chosen route does not apply.
ResolvedKappa resolve_kappa(const ExperimentConfig& config, const AssumptionReport& report);

ExperimentReport run_oracle_experiment(const ExperimentConfig& config);
ExperimentReport run_selection_experiment(const ExperimentConfig& config);
ExperimentReport run_lasso_comparison(const ExperimentConfig& config);

/// Dispatches on config.kind.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace mtgl
