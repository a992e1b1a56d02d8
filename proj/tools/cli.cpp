#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "mtgl/assumptions.hpp"
#include "mtgl/error.hpp"
#include "mtgl/io.hpp"
#include "mtgl/parallel.hpp"
#include "mtgl/probability.hpp"
#include "mtgl/regularization.hpp"
#include "mtgl/selection.hpp"
#include "mtgl/solver.hpp"

namespace mtgl::cli {

namespace fs = std::filesystem;

ProblemSpecs problem_specs_from(KeyValueConfig& config) {
  ProblemSpecs specs;
  specs.design.kind = parse_design_kind(config.get_string("design", "gaussian-iid"));
  specs.design.rho = config.get_double("rho", 0.0);
  specs.design.n = config.get_size("n", 0);
  specs.design.M = config.get_size("M", 0);
  specs.design.T = config.get_size("T", 1);
  specs.design.normalize = config.get_bool("normalize", true);
  specs.signal.s = config.get_size("s", 1);
  specs.signal.rule = parse_amplitude_rule(config.get_string("amplitude_rule", "constant"));
  specs.signal.amplitude = config.get_double("amplitude", 1.0);
  specs.signal.signs = parse_sign_rule(config.get_string("signs", "positive"));
  specs.noise.kind = parse_noise_kind(config.get_string("noise", "gaussian"));
  specs.noise.sigma = config.get_double("sigma", 1.0);
  specs.noise.nu = config.get_double("nu", 3.0);
  return specs;
}

ExperimentConfig experiment_config_from(KeyValueConfig& config) {
  ExperimentConfig ec;
  ec.kind = parse_experiment_kind(config.get_string("kind", "oracle"));
  const ProblemSpecs specs = problem_specs_from(config);
  ec.design = specs.design;
  ec.signal = specs.signal;
  ec.noise = specs.noise;
  ec.regime = parse_regime(config.get_string("regime", "gaussian"));
  ec.sigma = config.get_optional_double("plan_sigma");
  ec.A = config.get_double("A", ec.A);
  ec.delta = config.get_double("delta", ec.delta);
  ec.alpha = config.get_double("alpha", ec.alpha);
  ec.replicates = config.get_size("replicates", ec.replicates);
  ec.seed = config.get_u64("seed", ec.seed);
  ec.kappa_source = parse_kappa_source(config.get_string("kappa_source", "orthogonal"));
  ec.kappa = config.get_double("kappa", ec.kappa);
  ec.kappa2s = config.get_optional_double("kappa2s");
  ec.p_values = config.get_doubles("p_values");
  ec.bounds = config.get_strings("bounds");
  ec.algorithm = parse_algorithm(config.get_string("algorithm", "block-coordinate"));
  ec.kkt_tolerance = config.get_double("kkt_tolerance", ec.kkt_tolerance);
  ec.max_iterations = static_cast<int>(config.get_size("max_iterations", static_cast<std::size_t>(ec.max_iterations)));
  ec.margin = config.get_double("margin", ec.margin);
  ec.threshold_override = config.get_optional_double("threshold_override");
  ec.T_grid = config.get_sizes("T_grid", ec.T_grid);
  ec.A_L = config.get_double("A_L", ec.A_L);
  ec.min_win_fraction = config.get_double("min_win_fraction", ec.min_win_fraction);
  config.reject_unknown();
  return ec;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Record of one invocation; written to --run-manifest or, without it, to stderr.
struct RunManifest {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double seconds = 0.0;

  void write(std::ostream& os) const {
    os << "subcommand=" << subcommand << '\n' << "version=" << kVersion << '\n' << "seed=" << seed << '\n';
    for (const auto& [k, v] : config) os << "config." << k << '=' << v << '\n';
    for (const auto& p : inputs) os << "input=" << p << '\n';
    for (const auto& p : outputs) os << "output=" << p << '\n';
    os << "wall_clock_seconds=" << format_double(seconds) << '\n';
  }
};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write " + path.string());
  return out;
}

void print_tail_report(std::ostream& out, const std::string& label, const TailCheckReport& r) {
  out << label << ".analytic_bound=" << format_double(r.analytic_bound) << '\n'
      << label << ".empirical=" << format_double(r.empirical_frequency) << '\n'
      << label << ".replicates=" << r.replicates << '\n'
      << label << ".standard_error=" << format_double(r.standard_error) << '\n'
      << label << ".pass=" << (r.pass ? "true" : "false") << '\n';
}

std::string describe(double v) { return format_double(v); }

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& c) {
  auto list = [](const auto& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
  };
  std::vector<std::pair<std::string, std::string>> out{
      {"kind", std::string(to_string(c.kind))},
      {"design.n", std::to_string(c.design.n)},
      {"design.M", std::to_string(c.design.M)},
      {"design.T", std::to_string(c.design.T)},
      {"design.rho", describe(c.design.rho)},
      {"signal.s", std::to_string(c.signal.s)},
      {"signal.amplitude", describe(c.signal.amplitude)},
      {"noise.sigma", describe(c.noise.sigma)},
      {"noise.nu", describe(c.noise.nu)},
      {"regime", std::string(to_string(c.regime))},
      {"A", describe(c.A)},
      {"delta", describe(c.delta)},
      {"alpha", describe(c.alpha)},
      {"replicates", std::to_string(c.replicates)},
      {"kappa_source", std::string(to_string(c.kappa_source))},
      {"p_values", list(c.p_values)},
      {"bounds", list(c.bounds)},
      {"algorithm", std::string(to_string(c.algorithm))},
      {"kkt_tolerance", describe(c.kkt_tolerance)},
      {"max_iterations", std::to_string(c.max_iterations)},
      {"margin", describe(c.margin)},
      {"T_grid", list(c.T_grid)},
      {"A_L", describe(c.A_L)},
  };
  if (c.sigma) out.emplace_back("plan_sigma", describe(*c.sigma));
  if (c.threshold_override) out.emplace_back("threshold_override", describe(*c.threshold_override));
  return out;
}

struct Options {
  std::string run_manifest;
  std::size_t threads = 0;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-task group Lasso: estimation, tuning constants, design diagnostics and Monte Carlo checks",
               "mtgl"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opts;
  app.add_option("--run-manifest", opts.run_manifest, "Write the run manifest here (default: stderr)");
  app.add_option("--threads", opts.threads, "Worker threads (default: MTGL_THREADS or hardware concurrency)");

  RunManifest manifest;
  int status = ok;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic multi-task dataset");
  std::string gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--config", gen_config, "key=value spec file")->required();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--seed", gen_seed, "Seed (overrides the config's seed key)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve the group Lasso on a dataset");
  std::string solve_data, solve_out, solve_report, solve_alg = "block-coordinate";
  double solve_lambda = 0.0, solve_tol = 1e-8;
  int solve_max_iter = 100'000;
  solve->add_option("--data", solve_data, "Dataset manifest")->required();
  solve->add_option("--lambda", solve_lambda, "Regularization parameter")->required();
  solve->add_option("--algorithm", solve_alg, "block-coordinate or proximal-gradient");
  solve->add_option("--tol", solve_tol, "KKT tolerance");
  solve->add_option("--max-iter", solve_max_iter, "Iteration cap");
  solve->add_option("--out", solve_out, "beta_hat CSV (M x T)")->required();
  solve->add_option("--report", solve_report, "Run report (default: <out>.report.txt)");

  // select
  auto* select = app.add_subcommand("select", "Threshold a coefficient array into a sparsity pattern");
  std::string sel_beta, sel_out, sel_avg, sel_regime = "gaussian";
  std::optional<double> sel_tau, sel_sigma, sel_delta;
  std::optional<std::size_t> sel_n, sel_M;
  double sel_A = 9.0, sel_alpha = 8.0;
  select->add_option("--beta", sel_beta, "beta_hat CSV (M x T)")->required();
  select->add_option("--tau", sel_tau, "Threshold; otherwise derived from --sigma/--n/--alpha/...");
  select->add_option("--sigma", sel_sigma, "Noise level");
  select->add_option("--n", sel_n, "Observations per task");
  select->add_option("--M", sel_M, "Variables (default: rows of --beta)");
  select->add_option("--A", sel_A, "Gaussian-regime constant A");
  select->add_option("--alpha", sel_alpha, "Coherence parameter alpha");
  select->add_option("--regime", sel_regime, "gaussian or finite-variance");
  select->add_option("--delta", sel_delta, "Finite-variance exponent delta");
  select->add_option("--selected", sel_out, "Selected indices, one per line (default: stdout)");
  select->add_option("--average", sel_avg, "Average estimate CSV: index,a_hat,a_tilde,sign");

  // check
  auto* check = app.add_subcommand("check", "Diagnose the design assumptions");
  std::string check_data;
  std::size_t check_s = 1, check_samples = 200;
  double check_alpha = 2.0;
  std::uint64_t check_seed = 1;
  check->add_option("--data", check_data, "Dataset manifest")->required();
  check->add_option("--s", check_s, "Sparsity level");
  check->add_option("--alpha", check_alpha, "Coherence parameter alpha");
  check->add_option("--re-samples", check_samples, "Sampled cone directions per support size (0 skips)");
  check->add_option("--seed", check_seed, "Seed for the sampled RE estimate");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Print lambda, q, confidence, c, c1 and the threshold");
  double b_sigma = 1.0, b_A = 9.0, b_alpha = 8.0, b_p = 2.0;
  std::size_t b_n = 0, b_T = 0, b_M = 0;
  std::string b_regime = "gaussian";
  std::optional<double> b_delta, b_cprime;
  bool b_explore = false;
  bounds->add_option("--sigma", b_sigma, "Noise level");
  bounds->add_option("--n", b_n, "Observations per task")->required();
  bounds->add_option("--T", b_T, "Tasks")->required();
  bounds->add_option("--M", b_M, "Variables")->required();
  bounds->add_option("--A", b_A, "Gaussian-regime constant A (> 8)");
  bounds->add_option("--alpha", b_alpha, "Coherence parameter alpha (> 1)");
  bounds->add_option("--p", b_p, "Mixed-norm exponent for c1");
  bounds->add_option("--regime", b_regime, "gaussian or finite-variance");
  bounds->add_option("--delta", b_delta, "Finite-variance exponent delta");
  bounds->add_option("--c-prime", b_cprime, "Design constant c' for the finite-variance confidence");
  bounds->add_flag("--explore", b_explore, "Allow A <= 8 and mark the output outside_theory");

  // verify-lemmas
  auto* lemmas = app.add_subcommand("verify-lemmas", "Monte Carlo checks of the probability lemmas");
  std::uint64_t lem_seed = 1;
  std::size_t lem_chi = 100'000, lem_nem = 10'000, lem_event = 10'000;
  lemmas->add_option("--seed", lem_seed, "Seed");
  lemmas->add_option("--chi-replicates", lem_chi, "Draws per chi-square grid point");
  lemmas->add_option("--nemirovski-replicates", lem_nem, "Replicates per moment-inequality case");
  lemmas->add_option("--event-replicates", lem_event, "Noise draws for the concentration event");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo coverage experiment");
  std::string exp_config, exp_out;
  experiment->add_option("--config", exp_config, "key=value experiment file")->required();
  experiment->add_option("--out", exp_out, "Output prefix: writes <out>.csv and <out>.summary.txt")->required();

  std::vector<std::string> argv_storage{"mtgl"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  }

  const std::size_t threads = opts.threads ? opts.threads : default_thread_count();
  const auto start = Clock::now();

  try {
    if (gen->parsed()) {
      manifest.subcommand = "gen";
      KeyValueConfig cfg = KeyValueConfig::load(gen_config);
      ProblemSpecs specs = problem_specs_from(cfg);
      const std::uint64_t seed = gen_seed ? *gen_seed : cfg.get_u64("seed", 1);
      cfg.reject_unknown();
      for (const auto& [k, v] : cfg.entries()) manifest.config.emplace_back(k, v);
      manifest.seed = seed;
      manifest.inputs.push_back(gen_config);
      const SyntheticProblem problem = generate_dataset(specs.design, specs.signal, specs.noise, seed);
      const fs::path dir(gen_out);
      const auto manifest_path = write_dataset(problem.data, dir);
      write_coefficients(problem.beta_star, dir / "beta_star.csv");
      manifest.outputs = {manifest_path.string(), (dir / "beta_star.csv").string()};
      out << "manifest=" << manifest_path.string() << '\n';
    } else if (solve->parsed()) {
      manifest.subcommand = "solve";
      manifest.config = {{"lambda", describe(solve_lambda)},
                         {"algorithm", solve_alg},
                         {"tol", describe(solve_tol)},
                         {"max_iter", std::to_string(solve_max_iter)}};
      manifest.inputs.push_back(solve_data);
      const MultiTaskDataset data = read_dataset(solve_data);
      SolverConfig sc;
      sc.lambda = solve_lambda;
      sc.algorithm = parse_algorithm(solve_alg);
      sc.kkt_tolerance = solve_tol;
      sc.max_iterations = solve_max_iter;
      const SolveResult result = solve_group_lasso(data, sc);
      write_coefficients(result.beta_hat, solve_out);
      const std::string report_path = solve_report.empty() ? solve_out + ".report.txt" : solve_report;
      auto rep = open_output(report_path);
      rep << "algorithm=" << to_string(sc.algorithm) << '\n'
          << "lambda=" << format_double(sc.lambda) << '\n'
          << "iterations=" << result.iterations << '\n'
          << "kkt_residual=" << format_double(result.kkt_residual) << '\n'
          << "objective=" << format_double(result.objective_trace.back()) << '\n'
          << "converged=" << (result.converged ? "true" : "false") << '\n'
          << "active_groups=" << group_support(result.beta_hat, 0.0).size() << '\n';
      manifest.outputs = {solve_out, report_path};
      out << "converged=" << (result.converged ? "true" : "false") << '\n';
    } else if (select->parsed()) {
      manifest.subcommand = "select";
      manifest.inputs.push_back(sel_beta);
      const GroupCoefficients beta = read_coefficients(sel_beta);
      double tau = 0.0;
      if (sel_tau) {
        tau = *sel_tau;
      } else {
        if (!sel_sigma || !sel_n) throw config_error("select needs --tau, or --sigma and --n to derive it");
        const std::size_t M = sel_M.value_or(beta.M());
        const NoiseRegime regime = parse_regime(sel_regime);
        RegularizationPlan plan;
        if (regime == NoiseRegime::gaussian) {
          plan = lambda_gaussian(*sel_sigma, *sel_n, beta.T(), M, sel_A);
        } else {
          if (!sel_delta) throw config_error("finite-variance threshold needs --delta");
          plan = finite_variance_plan(*sel_sigma, *sel_n, beta.T(), M, *sel_delta);
        }
        tau = selection_threshold(threshold_constant_c(sel_alpha, *sel_sigma, regime), plan);
        manifest.config = {{"sigma", describe(*sel_sigma)}, {"n", std::to_string(*sel_n)},
                           {"regime", sel_regime},           {"A", describe(sel_A)},
                           {"alpha", describe(sel_alpha)}};
      }
      manifest.config.emplace_back("tau", describe(tau));
      const SelectionResult sel = select_support(beta, tau);
      std::ostringstream indices;
      for (std::size_t j : sel.selected.indices()) indices << j + 1 << '\n';
      if (sel_out.empty()) {
        out << indices.str();
      } else {
        open_output(sel_out) << indices.str();
        manifest.outputs.push_back(sel_out);
      }
      if (!sel_avg.empty()) {
        auto avg_out = open_output(sel_avg);
        write_average_csv(average_sign_estimate(beta, tau), avg_out);
        manifest.outputs.push_back(sel_avg);
      }
    } else if (check->parsed()) {
      manifest.subcommand = "check";
      manifest.seed = check_seed;
      manifest.config = {{"s", std::to_string(check_s)},
                         {"alpha", describe(check_alpha)},
                         {"re_samples", std::to_string(check_samples)}};
      manifest.inputs.push_back(check_data);
      const MultiTaskDataset data = read_dataset(check_data);
      AssumptionReport report = gram_diagnostics(data);
      report.admissible.push_back({check_s, check_alpha, coherence_admissible(report, check_s, check_alpha)});
      if (report.admissible.back().admissible) report.kappa_lower = re_lower_bound_from_coherence(check_alpha);
      if (check_samples > 0) report.kappa_upper_estimate = re_upper_estimate(data, check_s, check_samples, check_seed);
      out << "unit_diagonal_max_deviation=" << format_double(report.unit_diagonal_max_deviation) << '\n'
          << "unit_diagonal=" << (data.unit_diagonal() ? "true" : "false") << '\n'
          << "max_coherence=" << format_double(report.max_coherence) << '\n'
          << "phi_max=" << format_double(report.phi_max) << '\n'
          << "c_prime=" << format_double(report.c_prime) << '\n';
      for (const auto& a : report.admissible) {
        out << "admissible.s" << a.s << ".alpha" << describe(a.alpha) << '=' << (a.admissible ? "true" : "false")
            << '\n';
      }
      if (report.max_coherence > 0.0) {
        const double s_max = 1.0 / (7.0 * check_alpha * report.max_coherence);
        out << "max_admissible_s=" << (std::isinf(s_max) ? std::string("inf") : std::to_string(static_cast<std::size_t>(s_max)))
            << '\n';
      }
      if (report.kappa_lower) out << "kappa_lower=" << format_double(*report.kappa_lower) << '\n';
      if (report.kappa_upper_estimate) {
        out << "kappa_upper_estimate=" << format_double(*report.kappa_upper_estimate) << '\n';
      }
    } else if (bounds->parsed()) {
      manifest.subcommand = "bounds";
      manifest.config = {{"sigma", describe(b_sigma)}, {"n", std::to_string(b_n)}, {"T", std::to_string(b_T)},
                         {"M", std::to_string(b_M)},     {"A", describe(b_A)},      {"alpha", describe(b_alpha)},
                         {"p", describe(b_p)},           {"regime", b_regime}};
      const NoiseRegime regime = parse_regime(b_regime);
      RegularizationPlan plan;
      if (regime == NoiseRegime::gaussian) {
        plan = lambda_gaussian(b_sigma, b_n, b_T, b_M, b_A, b_explore ? TheoryCheck::explore : TheoryCheck::enforce);
      } else {
        if (!b_delta) throw config_error("finite-variance regime needs --delta");
        plan = finite_variance_plan(b_sigma, b_n, b_T, b_M, *b_delta);
        if (b_cprime) plan = with_design_constant(plan, *b_cprime);
      }
      const double c = threshold_constant_c(b_alpha, b_sigma, regime);
      out << "regime=" << to_string(regime) << '\n' << "lambda=" << format_double(plan.lambda) << '\n';
      if (regime == NoiseRegime::gaussian || b_cprime) {
        if (regime == NoiseRegime::gaussian) out << "q=" << format_double(plan.q) << '\n';
        out << "confidence=" << format_double(plan.confidence) << '\n';
        if (plan.confidence_vacuous) out << "confidence_vacuous=true\n";
      }
      out << "c=" << format_double(c) << '\n';
      if (regime == NoiseRegime::gaussian) out << "c1=" << format_double(norm_bound_constant_c1(b_alpha, b_p)) << '\n';
      out << "tau=" << format_double(selection_threshold(c, plan)) << '\n';
      if (plan.outside_theory) out << "outside_theory=true\n";
    } else if (lemmas->parsed()) {
      manifest.subcommand = "verify-lemmas";
      manifest.seed = lem_seed;
      manifest.config = {{"chi_replicates", std::to_string(lem_chi)},
                         {"nemirovski_replicates", std::to_string(lem_nem)},
                         {"event_replicates", std::to_string(lem_event)}};
      bool all = true;
      for (std::size_t T : {4, 16}) {
        for (double factor : {0.5, 1.0, 4.0}) {
          const double x = factor * static_cast<double>(T);
          const auto r = chi_square_tail_empirical(T, x, lem_chi, lem_seed, threads);
          print_tail_report(out, "chi_square.T" + std::to_string(T) + ".x" + describe(x), r);
          all = all && r.pass;
        }
      }
      for (std::size_t M : {3, 10, 100}) {
        for (auto [name, dist] : {std::pair{"rademacher", CoordinateDistribution::rademacher},
                                  std::pair{"gaussian", CoordinateDistribution::gaussian}}) {
          const auto r = nemirovski_check(M, 20, dist, lem_nem, lem_seed, threads);
          print_tail_report(out, std::string("nemirovski.M") + std::to_string(M) + "." + name, r);
          all = all && r.pass;
        }
      }
      {
        DesignSpec design{DesignKind::orthogonal, 0.0, 64, 8, 16, true};
        std::vector<Task> tasks;
        for (auto& x : generate_designs(design, lem_seed)) tasks.push_back({x, Vector::Zero(x.rows())});
        const MultiTaskDataset data(std::move(tasks));
        const auto plan = lambda_gaussian(1.0, 64, 16, 8, 9.0);
        const auto r = event_A_violation_rate(data, plan, lem_event, lem_seed, threads);
        print_tail_report(out, "event_A", r);
        all = all && r.pass;
      }
      out << "all_pass=" << (all ? "true" : "false") << '\n';
      if (!all) status = coverage_failure;
    } else if (experiment->parsed()) {
      manifest.subcommand = "experiment";
      manifest.inputs.push_back(exp_config);
      KeyValueConfig cfg = KeyValueConfig::load(exp_config);
      ExperimentConfig ec = experiment_config_from(cfg);
      ec.threads = threads;
      manifest.seed = ec.seed;
      manifest.config = describe(ec);
      const ExperimentReport report = run_experiment(ec);
      const std::string csv_path = exp_out + ".csv";
      const std::string summary_path = exp_out + ".summary.txt";
      {
        auto csv = open_output(csv_path);
        write_report_csv(report, csv);
      }
      {
        auto summary = open_output(summary_path);
        write_report_summary(report, summary);
      }
      write_report_summary(report, out);
      manifest.outputs = {csv_path, summary_path};
      if (!report.all_pass()) status = coverage_failure;
    }
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_failure;
  } catch (const std::invalid_argument& e) {
    // invalid_parameter, dimension_error, config_error
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const diagnostic_error& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_failure;
  }

  manifest.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  try {
    if (opts.run_manifest.empty()) {
      manifest.write(err);
    } else {
      auto mf = open_output(opts.run_manifest);
      manifest.write(mf);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  }
  return status;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace mtgl::cli
