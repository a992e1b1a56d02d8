#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtgl/model.hpp"

namespace mtgl {

struct AdmissibilityEntry {
  std::size_t s = 0;
  double alpha = 0.0;
  bool admissible = false;
};

/// Gram diagnostics of a design. kappa_lower comes from the coherence lemma
/// (a certified lower bound on the RE constant); kappa_upper_estimate from
/// sampled cone directions (an upper bound, never claimed exact).
struct AssumptionReport {
  double unit_diagonal_max_deviation = 0.0;
  double max_coherence = 0.0;
  std::vector<AdmissibilityEntry> admissible;
  std::optional<double> kappa_lower;
  std::optional<double> kappa_upper_estimate;
  double phi_max = 0.0;
  double c_prime = 0.0;
};

/// Direction probed in the restricted-eigenvalue quotient
/// sqrt(D^T X^T X D / n) / ||D_J||.
struct REProbe {
  GroupCoefficients direction;
  SparsityPattern support;
  double ratio = 0.0;
};

/**
 * Per-task Gram Psi_t = X_t^T X_t / n:
 *   max_coherence = max_{t, j != k} |Psi_t(j,k)|,
 *   phi_max = largest eigenvalue of X^T X / n (power iteration, rel tol 1e-9),
 *   c_prime = (1/nT) sum_t sum_i max_j x_tij^2.
 * Throws diagnostic_error on an all-zero design.
 */
AssumptionReport gram_diagnostics(const MultiTaskDataset& data);

/// max_coherence <= 1 / (7 alpha s) and the diagonal is unit within 1e-10.
bool coherence_admissible(const AssumptionReport& report, std::size_t s, double alpha);

/// sqrt(1 - 1/alpha).
double re_lower_bound_from_coherence(double alpha);

/// RE quotient of a direction for support J; nullopt when D_J = 0.
std::optional<double> re_quotient(const MultiTaskDataset& data, const GroupCoefficients& direction,
                                  const SparsityPattern& support);

/// ||D_{J^c}||_{2,1} <= 3 ||D_J||_{2,1} (with a relative rounding allowance).
bool in_re_cone(const GroupCoefficients& direction, const SparsityPattern& support);

/**
 * Minimum RE quotient over sampled cone directions with |J| <= s, followed by
 * multiplicative local refinement of the best probe. For each support size
 * k <= s, `samples` probes are drawn from streams keyed by (seed, k, probe),
 * so the estimate for s is the minimum over the per-k estimates and is
 * nonincreasing in s for a fixed seed. The first probe of every size has
 * D_{J^c} = 0.
 */
REProbe re_upper_probe(const MultiTaskDataset& data, std::size_t s, std::size_t samples, std::uint64_t seed);

double re_upper_estimate(const MultiTaskDataset& data, std::size_t s, std::size_t samples, std::uint64_t seed);

}  // namespace mtgl
