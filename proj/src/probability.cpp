#include "mtgl/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mtgl/error.hpp"
#include "mtgl/parallel.hpp"
#include "mtgl/random.hpp"

namespace mtgl {

namespace {

constexpr std::uint64_t kChiSquareStream = 0xC41;
constexpr std::uint64_t kNemirovskiStream = 0x4E3;
constexpr std::uint64_t kEventStream = 0xEA1;

TailCheckReport frequency_report(std::size_t hits, std::size_t replicates, double bound) {
  TailCheckReport report;
  report.analytic_bound = bound;
  report.replicates = replicates;
  report.empirical_frequency = static_cast<double>(hits) / static_cast<double>(replicates);
  const double p = report.empirical_frequency;
  report.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(replicates));
  report.pass = report.empirical_frequency <= report.analytic_bound + 3.0 * report.standard_error;
  return report;
}

}  // namespace

double chi_square_tail_bound(std::size_t T, double x) {
  if (T < 1) throw invalid_parameter("degrees of freedom must be >= 1");
  if (!(x > 0.0)) throw invalid_parameter("x must be positive");
  return std::exp(-std::min(x, x * x / static_cast<double>(T)) / 8.0);
}

TailCheckReport chi_square_tail_empirical(std::size_t T, double x, std::size_t replicates, std::uint64_t seed,
                                          std::size_t threads) {
  const double bound = chi_square_tail_bound(T, x);
  if (replicates < 1000) throw invalid_parameter("chi-square check needs at least 1000 replicates");
  const double level = static_cast<double>(T) + x;
  const auto exceed = parallel_map(replicates, threads, [&](std::size_t r) {
    Rng rng = stream(seed, kChiSquareStream, r);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < T; ++k) {
      const double z = gauss(rng);
      sum += z * z;
    }
    return sum > level ? 1 : 0;
  });
  std::size_t hits = 0;
  for (int e : exceed) hits += static_cast<std::size_t>(e);
  return frequency_report(hits, replicates, bound);
}

CoordinateDistribution parse_coordinate_distribution(std::string_view name) {
  if (name == "rademacher") return CoordinateDistribution::rademacher;
  if (name == "gaussian") return CoordinateDistribution::gaussian;
  if (name == "degenerate") return CoordinateDistribution::degenerate;
  throw invalid_parameter("unknown distribution '" + std::string(name) + "'");
}

double nemirovski_constant(std::size_t M) {
  if (M < 3) throw invalid_parameter("Nemirovski inequality needs M >= 3, got " + std::to_string(M));
  const double e = std::numbers::e;
  return 2.0 * e * std::log(static_cast<double>(M)) - e;
}

TailCheckReport nemirovski_check(std::size_t M, std::size_t n_vectors, CoordinateDistribution distribution,
                                 std::size_t replicates, std::uint64_t seed, std::size_t threads) {
  const double constant = nemirovski_constant(M);
  if (n_vectors < 1) throw invalid_parameter("need at least one vector");
  if (replicates < 2) throw invalid_parameter("need at least two replicates");

  struct Draw {
    double left;
    double right;
  };
  const auto draws = parallel_map(replicates, threads, [&](std::size_t r) {
    Rng rng = stream(seed, kNemirovskiStream, r);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    Vector sum = Vector::Zero(static_cast<Eigen::Index>(M));
    Draw d{0.0, 0.0};
    for (std::size_t i = 0; i < n_vectors; ++i) {
      double max_sq = 0.0;
      for (Eigen::Index j = 0; j < sum.size(); ++j) {
        double y = 0.0;
        switch (distribution) {
          case CoordinateDistribution::rademacher: y = coin(rng) ? 1.0 : -1.0; break;
          case CoordinateDistribution::gaussian: y = gauss(rng); break;
          case CoordinateDistribution::degenerate: y = 0.0; break;
        }
        sum[j] += y;
        max_sq = std::max(max_sq, y * y);
      }
      d.right += max_sq;
    }
    d.left = sum.cwiseAbs().maxCoeff();
    d.left *= d.left;
    return d;
  });

  const double R = static_cast<double>(replicates);
  double left = 0.0, right = 0.0, diff_mean = 0.0;
  for (const auto& d : draws) {
    left += d.left;
    right += d.right;
    diff_mean += d.left - constant * d.right;
  }
  left /= R;
  right /= R;
  diff_mean /= R;
  double diff_var = 0.0;
  for (const auto& d : draws) {
    const double dev = d.left - constant * d.right - diff_mean;
    diff_var += dev * dev;
  }
  diff_var /= R - 1.0;

  TailCheckReport report;
  report.analytic_bound = constant * right;
  report.empirical_frequency = left;
  report.replicates = replicates;
  report.standard_error = std::sqrt(diff_var / R);
  report.pass = report.empirical_frequency <= report.analytic_bound + 3.0 * report.standard_error;
  return report;
}

double noise_correlation_norm(const MultiTaskDataset& data, const Matrix& noise) {
  return correlate(data, noise).rowwise().norm().maxCoeff() / static_cast<double>(data.n() * data.T());
}

TailCheckReport event_A_violation_rate(const MultiTaskDataset& data, const RegularizationPlan& plan,
                                       std::size_t replicates, std::uint64_t seed, std::size_t threads) {
  if (!data.unit_diagonal()) throw diagnostic_error("concentration event check needs a unit-diagonal design");
  if (plan.regime != NoiseRegime::gaussian) throw invalid_parameter("concentration event check needs a gaussian plan");
  if (plan.M != data.M() || plan.n != data.n() || plan.T != data.T()) {
    throw dimension_error("plan sizes do not match the dataset");
  }
  if (replicates < 1) throw invalid_parameter("need at least one replicate");
  const double half_lambda = plan.lambda / 2.0;
  const auto violated = parallel_map(replicates, threads, [&](std::size_t r) {
    Rng rng = stream(seed, kEventStream, r);
    std::normal_distribution<double> gauss(0.0, plan.sigma);
    Matrix w(static_cast<Eigen::Index>(data.n()), static_cast<Eigen::Index>(data.T()));
    for (Eigen::Index t = 0; t < w.cols(); ++t) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, t) = gauss(rng);
    }
    return noise_correlation_norm(data, w) > half_lambda ? 1 : 0;
  });
  std::size_t hits = 0;
  for (int v : violated) hits += static_cast<std::size_t>(v);
  const double bound = std::pow(static_cast<double>(plan.M), 1.0 - plan.q);
  return frequency_report(hits, replicates, bound);
}

}  // namespace mtgl
