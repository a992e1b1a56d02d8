#include "mtgl/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <functional>
#include <set>

#include "mtgl/error.hpp"
#include "mtgl/parallel.hpp"
#include "mtgl/random.hpp"
#include "mtgl/selection.hpp"

namespace mtgl {

KappaSource parse_kappa_source(std::string_view name) {
  if (name == "coherence-lemma") return KappaSource::coherence_lemma;
  if (name == "orthogonal") return KappaSource::orthogonal;
  if (name == "user-supplied") return KappaSource::user_supplied;
  throw invalid_parameter("unknown kappa source '" + std::string(name) +
                          "' (expected coherence-lemma, orthogonal or user-supplied)");
}

std::string_view to_string(KappaSource k) {
  switch (k) {
    case KappaSource::coherence_lemma: return "coherence-lemma";
    case KappaSource::orthogonal: return "orthogonal";
    case KappaSource::user_supplied: return "user-supplied";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "oracle") return ExperimentKind::oracle;
  if (name == "selection") return ExperimentKind::selection;
  if (name == "lasso-comparison") return ExperimentKind::lasso_comparison;
  throw invalid_parameter("unknown experiment kind '" + std::string(name) +
                          "' (expected oracle, selection or lasso-comparison)");
}

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::oracle: return "oracle";
    case ExperimentKind::selection: return "selection";
    case ExperimentKind::lasso_comparison: return "lasso-comparison";
  }
  return "?";
}

bool ExperimentReport::all_pass() const {
  return std::all_of(coverage.begin(), coverage.end(), [](const CoverageSummary& c) { return c.pass; });
}

const CoverageSummary* ExperimentReport::find(std::string_view name) const {
  for (const auto& c : coverage) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double coverage_floor(double required, std::size_t replicates) {
  const double p = std::clamp(required, 0.0, 1.0);
  return p - 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(replicates));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string mixed_norm_name(double p) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, p);
  return "mixed_norm_p" + std::string(buf, res.ptr);
}

double root_term(const RegularizationPlan& plan) {
  // sqrt(1 + A log M / sqrt(T)) or sqrt((log M)^(1+delta)), i.e. deviation_scale * sqrt(n)
  return deviation_scale(plan) * std::sqrt(static_cast<double>(plan.n));
}

double plan_sigma(const ExperimentConfig& config) { return config.sigma.value_or(config.noise.sigma); }

}  // namespace

std::vector<BoundRhs> oracle_bounds_rhs(const RegularizationPlan& plan, std::size_t s, double kappa,
                                        std::optional<double> kappa2s, double phi_max, std::optional<double> alpha,
                                        const std::vector<double>& p_values) {
  if (!(kappa > 0.0)) throw invalid_parameter("kappa must be positive");
  if (kappa2s && !(*kappa2s > 0.0)) throw invalid_parameter("kappa(2s) must be positive");
  if (s < 1) throw invalid_parameter("s must be >= 1");
  const double sigma = plan.sigma;
  const double sd = static_cast<double>(s);
  const double n = static_cast<double>(plan.n);
  const double k2 = kappa * kappa;
  const double r = root_term(plan);
  std::vector<BoundRhs> out;
  if (plan.regime == NoiseRegime::gaussian) {
    out.push_back({"prediction", 64.0 * sigma * sigma / k2 * sd / n * r * r});
    out.push_back({"l21_error", 32.0 * sigma / k2 * sd / std::sqrt(n) * r});
    out.push_back({"sparsity", 64.0 * phi_max / k2 * sd});
    if (kappa2s) {
      out.push_back({"l2_error", 8.0 * std::sqrt(10.0) * sigma / (*kappa2s * *kappa2s) * std::sqrt(sd / n) * r});
    }
    out.push_back({"correlation", 1.5 * plan.lambda});
    if (alpha) {
      const double c = threshold_constant_c(*alpha, sigma, plan.regime);
      out.push_back({"sup_norm", c / std::sqrt(n) * r});
      out.push_back({"average", c / std::sqrt(n) * r});
      for (double p : p_values) {
        const double c1 = norm_bound_constant_c1(*alpha, p);
        const double s_pow = std::isinf(p) ? 1.0 : std::pow(sd, 1.0 / p);
        out.push_back({mixed_norm_name(p), c1 * sigma * s_pow / std::sqrt(n) * r});
      }
    }
  } else {
    const double L = r * r;  // (log M)^(1+delta)
    out.push_back({"prediction", 16.0 / k2 * sigma * sigma * sd * L / n});
    out.push_back({"l21_error", 16.0 / k2 * sigma * sd * std::sqrt(L / n)});
    out.push_back({"sparsity", 64.0 * phi_max / k2 * sd});
    if (kappa2s) {
      out.push_back({"l2_error", std::sqrt(160.0) / (*kappa2s * *kappa2s) * sigma * std::sqrt(sd * L / n)});
    }
    if (alpha) {
      const double c = threshold_constant_c(*alpha, sigma, plan.regime);
      out.push_back({"sup_norm", c * std::sqrt(L / n)});
    }
  }
  return out;
}

RegularizationPlan make_plan(const ExperimentConfig& config, std::size_t T) {
  const double sigma = plan_sigma(config);
  if (config.regime == NoiseRegime::gaussian) {
    return lambda_gaussian(sigma, config.design.n, T, config.design.M, config.A);
  }
  return finite_variance_plan(sigma, config.design.n, T, config.design.M, config.delta);
}

ResolvedKappa resolve_kappa(const ExperimentConfig& config, const AssumptionReport& report) {
  const std::size_t s = config.signal.s;
  ResolvedKappa out;
  out.provenance = std::string(to_string(config.kappa_source));
  switch (config.kappa_source) {
    case KappaSource::orthogonal:
      if (report.max_coherence > 1e-10 || report.unit_diagonal_max_deviation > kUnitDiagonalTolerance) {
        throw config_error("kappa source 'orthogonal' needs X_t^T X_t / n = I; observed coherence " +
                           std::to_string(report.max_coherence));
      }
      out.kappa = 1.0;
      out.kappa2s = 1.0;
      break;
    case KappaSource::coherence_lemma:
      if (!coherence_admissible(report, s, config.alpha)) {
        throw config_error("design coherence " + std::to_string(report.max_coherence) + " exceeds 1/(7 alpha s) = " +
                           std::to_string(1.0 / (7.0 * config.alpha * static_cast<double>(s))));
      }
      out.kappa = re_lower_bound_from_coherence(config.alpha);
      if (2 * s <= config.design.M && coherence_admissible(report, 2 * s, config.alpha)) out.kappa2s = out.kappa;
      break;
    case KappaSource::user_supplied:
      if (!(config.kappa > 0.0)) throw config_error("user-supplied kappa must be positive");
      out.kappa = config.kappa;
      out.kappa2s = config.kappa2s;
      break;
  }
  return out;
}

namespace {

void validate_config(const ExperimentConfig& config) {
  validate(config.design);
  validate(config.signal, config.design.M);
  validate(config.noise);
  if (config.replicates < 1) throw config_error("replicates must be >= 1");
  if (!(plan_sigma(config) > 0.0)) throw config_error("sigma must be positive (it sets lambda)");
  if (!(config.alpha > 1.0)) throw config_error("alpha must exceed 1");
  for (double p : config.p_values) {
    if (!(p >= 1.0)) throw config_error("p values must be >= 1");
  }
  if (config.regime == NoiseRegime::finite_variance && !config.p_values.empty()) {
    throw config_error("mixed-norm bounds are only available in the gaussian regime");
  }
  if (config.kind != ExperimentKind::lasso_comparison && !config.design.normalize &&
      config.design.kind != DesignKind::orthogonal) {
    throw config_error("theory bounds need normalized designs (normalize = true)");
  }
}

double theory_threshold(const ExperimentConfig& config, const RegularizationPlan& plan) {
  return selection_threshold(threshold_constant_c(config.alpha, plan.sigma, plan.regime), plan);
}

// The override changes only the selection threshold; the truth is still built
// against the theory threshold.
double threshold_for(const ExperimentConfig& config, const RegularizationPlan& plan) {
  if (config.threshold_override) {
    if (!(*config.threshold_override > 0.0)) throw config_error("threshold override must be positive");
    return *config.threshold_override;
  }
  return theory_threshold(config, plan);
}

std::set<std::string> available_names(const ExperimentConfig& config, const RegularizationPlan& plan,
                                       const ResolvedKappa& kappa) {
  std::set<std::string> names;
  for (const auto& b : oracle_bounds_rhs(plan, config.signal.s, kappa.kappa, kappa.kappa2s, 1.0, config.alpha,
                                         config.p_values)) {
    names.insert(b.name);
  }
  if (plan.regime == NoiseRegime::gaussian) names.insert("sparsity_via_prediction");
  return names;
}

bool wanted(const ExperimentConfig& config, const std::string& name) {
  return config.bounds.empty() || std::find(config.bounds.begin(), config.bounds.end(), name) != config.bounds.end();
}

ReplicateMetrics evaluate_replicate(const ExperimentConfig& config, const RegularizationPlan& base_plan,
                                    std::optional<double> tau, double truth_tau, std::size_t r) {
  ReplicateMetrics m;
  m.index = r;
  m.seed = replicate_seed(config.seed, r);
  m.T = config.design.T;
  const std::size_t M = config.design.M;
  const std::size_t T = config.design.T;

  GroupCoefficients beta_star =
      config.kind == ExperimentKind::selection
          ? generate_beta_for_selection(config.signal, M, T, truth_tau, config.margin, m.seed)
          : generate_beta(config.signal, M, T, m.seed);
  if (config.kind == ExperimentKind::selection && !betamin_satisfied(beta_star, truth_tau)) {
    throw config_error("beta-min condition fails for the generated truth");
  }
  const SyntheticProblem problem = generate_dataset(config.design, beta_star, config.noise, m.seed);
  const MultiTaskDataset& data = problem.data;

  const AssumptionReport diag = gram_diagnostics(data);
  const ResolvedKappa kappa = resolve_kappa(config, diag);
  m.phi_max = diag.phi_max;
  m.c_prime = diag.c_prime;
  RegularizationPlan plan = base_plan;
  if (plan.regime == NoiseRegime::finite_variance) plan = with_design_constant(plan, diag.c_prime);
  m.confidence = plan.confidence;

  SolverConfig solver;
  solver.lambda = plan.lambda;
  solver.algorithm = config.algorithm;
  solver.kkt_tolerance = config.kkt_tolerance;
  solver.max_iterations = config.max_iterations;
  const SolveResult fit = solve_group_lasso(data, solver);
  m.converged = fit.converged;
  m.iterations = fit.iterations;
  m.kkt_residual = fit.kkt_residual;

  const double root_t = std::sqrt(static_cast<double>(T));
  const double nT = static_cast<double>(data.n() * T);
  GroupCoefficients diff{fit.beta_hat.values - beta_star.values};
  Matrix fitted_diff(static_cast<Eigen::Index>(data.n()), static_cast<Eigen::Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    const auto col = static_cast<Eigen::Index>(t);
    fitted_diff.col(col) = data.task(t).design * diff.values.col(col);
  }
  m.prediction_error = fitted_diff.squaredNorm() / nT;
  m.err_21 = mixed_norm(diff, 1.0) / root_t;
  m.err_2 = diff.values.norm() / root_t;
  m.err_2inf = mixed_norm(diff, kInfinity) / root_t;
  for (double p : config.p_values) m.err_2p.push_back(mixed_norm(diff, p) / root_t);
  m.average_error = (fit.beta_hat.values.rowwise().mean() - beta_star.values.rowwise().mean()).cwiseAbs().maxCoeff();
  const double support_tol = config.algorithm == Algorithm::block_coordinate ? 0.0 : 1e-10;
  m.m_hat = group_support(fit.beta_hat, support_tol).size();
  m.correlation_stat = correlate(data, fitted_diff).rowwise().norm().maxCoeff() / nT;

  if (tau) {
    SelectionResult sel = select_support(fit.beta_hat, *tau);
    sel.true_pattern = group_support(beta_star, 0.0);
    m.support_exact = score_selection(sel).exact_recovery;
    const AverageEstimate avg = average_sign_estimate(fit.beta_hat, *tau);
    m.sign_exact = avg.signs == sign_vector(beta_star.values.rowwise().mean());
  }

  auto lhs_of = [&](const std::string& name) -> double {
    if (name == "prediction") return m.prediction_error;
    if (name == "l21_error") return m.err_21;
    if (name == "sparsity" || name == "sparsity_via_prediction") return static_cast<double>(m.m_hat);
    if (name == "l2_error") return m.err_2;
    if (name == "correlation") return m.correlation_stat;
    if (name == "sup_norm") return m.err_2inf;
    if (name == "average") return m.average_error;
    for (std::size_t i = 0; i < config.p_values.size(); ++i) {
      if (name == mixed_norm_name(config.p_values[i])) return m.err_2p[i];
    }
    throw internal_error("no left-hand side for bound " + name);
  };

  for (const auto& b : oracle_bounds_rhs(plan, config.signal.s, kappa.kappa, kappa.kappa2s, diag.phi_max,
                                         config.alpha, config.p_values)) {
    if (!wanted(config, b.name)) continue;
    const double lhs = lhs_of(b.name);
    m.checks.push_back({b.name, lhs, b.rhs, m.converged && lhs <= b.rhs});
  }
  if (plan.regime == NoiseRegime::gaussian && wanted(config, "sparsity_via_prediction")) {
    const double rhs = 4.0 * diag.phi_max * m.prediction_error / (plan.lambda * plan.lambda * static_cast<double>(T));
    const double lhs = static_cast<double>(m.m_hat);
    m.checks.push_back({"sparsity_via_prediction", lhs, rhs, m.converged && lhs <= rhs});
  }
  return m;
}

CoverageSummary summarize(std::string name, const std::vector<ReplicateMetrics>& reps, double required,
                          const std::function<bool(const ReplicateMetrics&)>& hit,
                          const std::function<std::optional<std::pair<double, double>>(const ReplicateMetrics&)>& sides) {
  CoverageSummary c;
  c.name = std::move(name);
  c.required_confidence = required;
  std::size_t hits = 0;
  double rhs_sum = 0.0;
  std::size_t rhs_count = 0;
  for (const auto& m : reps) {
    if (hit(m)) ++hits;
    if (auto lr = sides(m)) {
      rhs_sum += lr->second;
      ++rhs_count;
      if (lr->second > 0.0) c.max_ratio = std::max(c.max_ratio, lr->first / lr->second);
    }
  }
  c.coverage = static_cast<double>(hits) / static_cast<double>(reps.size());
  c.rhs_value = rhs_count ? rhs_sum / static_cast<double>(rhs_count) : kNaN;
  c.pass = c.coverage >= coverage_floor(required, reps.size());
  return c;
}

ExperimentReport run_theory_experiment(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentReport report;
  report.kind = config.kind;
  report.plan = make_plan(config, config.design.T);
  const std::optional<double> tau = threshold_for(config, report.plan);
  report.threshold = tau;
  const double truth_tau = theory_threshold(config, report.plan);
  if (config.kind == ExperimentKind::selection && !(config.margin > 2.0)) {
    throw config_error("beta-min margin must exceed 2");
  }

  // Resolve kappa on the first replicate's design before any solve.
  {
    const auto designs = generate_designs(config.design, replicate_seed(config.seed, 0));
    std::vector<Task> tasks;
    for (auto& x : designs) tasks.push_back({x, Vector::Zero(x.rows())});
    report.kappa = resolve_kappa(config, gram_diagnostics(MultiTaskDataset(std::move(tasks))));
    const auto names = available_names(config, report.plan, report.kappa);
    for (const auto& b : config.bounds) {
      if (!names.count(b)) throw config_error("bound '" + b + "' is not available for this configuration");
    }
  }

  report.replicates = parallel_map(config.replicates, config.threads, [&](std::size_t r) {
    return evaluate_replicate(config, report.plan, tau, truth_tau, r);
  });
  for (const auto& m : report.replicates) report.non_converged += m.converged ? 0 : 1;

  double required = report.plan.confidence;
  if (report.plan.regime == NoiseRegime::finite_variance) {
    required = 1.0;
    for (const auto& m : report.replicates) required = std::min(required, m.confidence);
    report.plan.confidence = required;
  }

  const auto& first = report.replicates.front().checks;
  for (std::size_t i = 0; i < first.size(); ++i) {
    report.coverage.push_back(summarize(
        first[i].name, report.replicates, required, [i](const ReplicateMetrics& m) { return m.checks[i].holds; },
        [i](const ReplicateMetrics& m) { return std::make_optional(std::pair{m.checks[i].lhs, m.checks[i].rhs}); }));
  }
  if (config.kind == ExperimentKind::selection) {
    auto none = [](const ReplicateMetrics&) -> std::optional<std::pair<double, double>> { return std::nullopt; };
    report.coverage.push_back(summarize(
        "support_recovery", report.replicates, required,
        [](const ReplicateMetrics& m) { return m.converged && m.support_exact; }, none));
    report.coverage.push_back(summarize(
        "sign_recovery", report.replicates, required,
        [](const ReplicateMetrics& m) { return m.converged && m.sign_exact; }, none));
  }
  return report;
}

}  // namespace

ExperimentReport run_oracle_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.kind = ExperimentKind::oracle;
  return run_theory_experiment(c);
}

ExperimentReport run_selection_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.kind = ExperimentKind::selection;
  return run_theory_experiment(c);
}

ExperimentReport run_lasso_comparison(const ExperimentConfig& config) {
  validate(config.design);
  validate(config.signal, config.design.M);
  validate(config.noise);
  if (config.replicates < 1) throw config_error("replicates must be >= 1");
  if (config.T_grid.empty()) throw config_error("T grid is empty");
  if (!(config.A_L > 2.0 * std::sqrt(2.0))) {
    throw config_error("plain-Lasso constant A_L must exceed 2 sqrt(2), got " + std::to_string(config.A_L));
  }
  if (!(plan_sigma(config) > 0.0)) throw config_error("sigma must be positive (it sets lambda)");

  ExperimentReport report;
  report.kind = ExperimentKind::lasso_comparison;
  report.plan = make_plan(config, config.T_grid.front());
  const double sigma = plan_sigma(config);

  for (std::size_t gi = 0; gi < config.T_grid.size(); ++gi) {
    const std::size_t T = config.T_grid[gi];
    if (T < 1) throw config_error("T grid entries must be >= 1");
    DesignSpec design = config.design;
    design.T = T;
    const RegularizationPlan plan = make_plan(config, T);
    const double mt = static_cast<double>(config.design.M * T);
    const double lasso_lambda = config.A_L * sigma * std::sqrt(std::log(mt) / static_cast<double>(config.design.n * T));

    auto reps = parallel_map(config.replicates, config.threads, [&](std::size_t r) {
      ReplicateMetrics m;
      m.index = r;
      m.T = T;
      m.seed = replicate_seed(config.seed ^ mix64(T), r);
      const SyntheticProblem problem = generate_dataset(design, config.signal, config.noise, m.seed);
      const auto& data = problem.data;
      const double nT = static_cast<double>(data.n() * T);
      auto prediction = [&](const GroupCoefficients& b) {
        double acc = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          const auto col = static_cast<Eigen::Index>(t);
          acc += (data.task(t).design * (b.values.col(col) - problem.beta_star.values.col(col))).squaredNorm();
        }
        return acc / nT;
      };
      SolverConfig solver;
      solver.lambda = plan.lambda;
      solver.algorithm = config.algorithm;
      solver.kkt_tolerance = config.kkt_tolerance;
      solver.max_iterations = config.max_iterations;
      const SolveResult group = solve_group_lasso(data, solver);
      const SolveResult lasso = solve_lasso_baseline(data, lasso_lambda, config.max_iterations, config.kkt_tolerance);
      m.converged = group.converged;
      m.iterations = group.iterations;
      m.kkt_residual = group.kkt_residual;
      m.lasso_converged = lasso.converged;
      m.prediction_error = prediction(group.beta_hat);
      m.lasso_prediction_error = prediction(lasso.beta_hat);
      return m;
    });

    LassoComparisonRow row;
    row.T = T;
    for (const auto& m : reps) {
      row.group_mean_error += m.prediction_error;
      row.lasso_mean_error += m.lasso_prediction_error;
      const bool win = m.converged && m.lasso_converged && m.prediction_error <= m.lasso_prediction_error;
      row.wins.push_back(win);
      row.win_fraction += win ? 1.0 : 0.0;
      report.non_converged += (m.converged && m.lasso_converged) ? 0 : 1;
    }
    const double R = static_cast<double>(reps.size());
    row.group_mean_error /= R;
    row.lasso_mean_error /= R;
    row.win_fraction /= R;
    row.ratio = row.lasso_mean_error > 0.0 ? row.group_mean_error / row.lasso_mean_error : kNaN;
    report.lasso_comparison.push_back(std::move(row));
    report.replicates.insert(report.replicates.end(), std::make_move_iterator(reps.begin()),
                             std::make_move_iterator(reps.end()));
  }

  const auto& last = report.lasso_comparison.back();
  CoverageSummary wins;
  wins.name = "group_wins_at_T" + std::to_string(last.T);
  wins.rhs_value = kNaN;
  wins.coverage = last.win_fraction;
  wins.required_confidence = config.min_win_fraction;
  wins.pass = last.win_fraction >= config.min_win_fraction;
  report.coverage.push_back(wins);

  CoverageSummary trend;
  trend.name = "ratio_nonincreasing";
  trend.rhs_value = kNaN;
  trend.required_confidence = 1.0;
  bool monotone = true;
  for (std::size_t i = 1; i < report.lasso_comparison.size(); ++i) {
    monotone = monotone && report.lasso_comparison[i].ratio <= report.lasso_comparison[i - 1].ratio;
  }
  trend.coverage = monotone ? 1.0 : 0.0;
  trend.pass = monotone;
  report.coverage.push_back(trend);
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::oracle: return run_oracle_experiment(config);
    case ExperimentKind::selection: return run_selection_experiment(config);
    case ExperimentKind::lasso_comparison: return run_lasso_comparison(config);
  }
  throw internal_error("unknown experiment kind");
}

}  // namespace mtgl
