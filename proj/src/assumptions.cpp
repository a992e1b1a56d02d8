#include "mtgl/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mtgl/error.hpp"
#include "mtgl/linalg.hpp"
#include "mtgl/random.hpp"

namespace mtgl {

AssumptionReport gram_diagnostics(const MultiTaskDataset& data) {
  AssumptionReport report;
  report.unit_diagonal_max_deviation = data.unit_diagonal_max_deviation();
  bool any_nonzero = false;
  double c_prime_sum = 0.0;
  for (std::size_t t = 0; t < data.T(); ++t) {
    const Matrix& x = data.task(t).design;
    if (!x.isZero(0.0)) any_nonzero = true;
    const Matrix gram = task_gram(data, t);
    for (Eigen::Index j = 0; j < gram.rows(); ++j) {
      for (Eigen::Index k = 0; k < j; ++k) report.max_coherence = std::max(report.max_coherence, std::abs(gram(j, k)));
    }
    report.phi_max = std::max(report.phi_max, largest_eigenvalue(gram, 1e-9));
    c_prime_sum += x.cwiseAbs2().rowwise().maxCoeff().sum();
  }
  if (!any_nonzero) throw diagnostic_error("design is identically zero");
  report.c_prime = c_prime_sum / static_cast<double>(data.n() * data.T());
  return report;
}

bool coherence_admissible(const AssumptionReport& report, std::size_t s, double alpha) {
  if (s < 1) throw invalid_parameter("s must be >= 1");
  if (!(alpha > 1.0)) throw invalid_parameter("alpha must exceed 1");
  return report.unit_diagonal_max_deviation <= kUnitDiagonalTolerance &&
         report.max_coherence <= 1.0 / (7.0 * alpha * static_cast<double>(s));
}

double re_lower_bound_from_coherence(double alpha) {
  if (!(alpha > 1.0)) throw invalid_parameter("alpha must exceed 1, got " + std::to_string(alpha));
  return std::sqrt(1.0 - 1.0 / alpha);
}

std::optional<double> re_quotient(const MultiTaskDataset& data, const GroupCoefficients& direction,
                                  const SparsityPattern& support) {
  check_shape(data, direction);
  double on_support = 0.0;
  for (std::size_t j : support.indices()) on_support += direction.values.row(static_cast<Eigen::Index>(j)).squaredNorm();
  if (on_support == 0.0) return std::nullopt;
  double quad = 0.0;
  for (std::size_t t = 0; t < data.T(); ++t) {
    quad += (data.task(t).design * direction.values.col(static_cast<Eigen::Index>(t))).squaredNorm();
  }
  return std::sqrt(quad / static_cast<double>(data.n())) / std::sqrt(on_support);
}

namespace {

struct ConeMass {
  double on = 0.0;
  double off = 0.0;
};

ConeMass cone_mass(const GroupCoefficients& d, const SparsityPattern& support) {
  ConeMass m;
  for (std::size_t j = 0; j < d.M(); ++j) (support.contains(j) ? m.on : m.off) += d.group_norm(j);
  return m;
}

// Rescale the off-support rows so that the cone constraint holds.
void project_to_cone(GroupCoefficients& d, const SparsityPattern& support) {
  const auto m = cone_mass(d, support);
  if (m.off <= 3.0 * m.on) return;
  const double scale = 3.0 * m.on / m.off;
  for (std::size_t j = 0; j < d.M(); ++j) {
    if (!support.contains(j)) d.values.row(static_cast<Eigen::Index>(j)) *= scale;
  }
}

SparsityPattern random_support(std::size_t M, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(M);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates with explicit draws; std::shuffle is not portable across libraries.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, M - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return SparsityPattern(std::move(idx), M);
}

REProbe draw_probe(const MultiTaskDataset& data, std::size_t k, bool off_support_zero, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> factor_dist(0.0, 3.0);
  REProbe probe{GroupCoefficients::zeros(data.M(), data.T()), random_support(data.M(), k, rng)};
  for (std::size_t j = 0; j < data.M(); ++j) {
    for (std::size_t t = 0; t < data.T(); ++t) {
      probe.direction.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t)) = gauss(rng);
    }
  }
  const double factor = off_support_zero ? 0.0 : factor_dist(rng);
  const auto m = cone_mass(probe.direction, probe.support);
  const double scale = m.off > 0.0 ? factor * m.on / m.off : 0.0;
  for (std::size_t j = 0; j < data.M(); ++j) {
    if (!probe.support.contains(j)) probe.direction.values.row(static_cast<Eigen::Index>(j)) *= scale;
  }
  probe.ratio = re_quotient(data, probe.direction, probe.support).value();
  return probe;
}

// Random multiplicative perturbations of the best probe, accepted when they
// lower the quotient; the step shrinks after a run of rejections.
void refine(const MultiTaskDataset& data, REProbe& best, Rng& rng, std::size_t rounds) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double step = 0.5;
  std::size_t rejected = 0;
  for (std::size_t r = 0; r < rounds && step > 1e-6; ++r) {
    GroupCoefficients candidate = best.direction;
    for (Eigen::Index j = 0; j < candidate.values.rows(); ++j) {
      for (Eigen::Index t = 0; t < candidate.values.cols(); ++t) {
        candidate.values(j, t) *= 1.0 + step * gauss(rng);
      }
    }
    project_to_cone(candidate, best.support);
    const auto ratio = re_quotient(data, candidate, best.support);
    if (ratio && *ratio < best.ratio) {
      best.direction = std::move(candidate);
      best.ratio = *ratio;
      rejected = 0;
    } else if (++rejected >= 20) {
      step *= 0.5;
      rejected = 0;
    }
  }
}

}  // namespace

bool in_re_cone(const GroupCoefficients& direction, const SparsityPattern& support) {
  const auto m = cone_mass(direction, support);
  return m.on > 0.0 && m.off <= 3.0 * m.on * (1.0 + 1e-12);
}

REProbe re_upper_probe(const MultiTaskDataset& data, std::size_t s, std::size_t samples, std::uint64_t seed) {
  if (s < 1 || s > data.M()) {
    throw invalid_parameter("s must lie in [1, M=" + std::to_string(data.M()) + "], got " + std::to_string(s));
  }
  if (samples < 1) throw invalid_parameter("samples must be >= 1");
  std::optional<REProbe> overall;
  for (std::size_t k = 1; k <= s; ++k) {
    std::optional<REProbe> best;
    for (std::size_t i = 0; i < samples; ++i) {
      Rng rng = stream(seed, 0x5245'0000ULL + k, i);
      REProbe probe = draw_probe(data, k, i == 0, rng);
      if (!best || probe.ratio < best->ratio) best = std::move(probe);
    }
    Rng rng = stream(seed, 0x5246'0000ULL + k);
    refine(data, *best, rng, 50 * samples);
    if (!overall || best->ratio < overall->ratio) overall = std::move(best);
  }
  return std::move(*overall);
}

double re_upper_estimate(const MultiTaskDataset& data, std::size_t s, std::size_t samples, std::uint64_t seed) {
  return re_upper_probe(data, s, samples, seed).ratio;
}

}  // namespace mtgl
