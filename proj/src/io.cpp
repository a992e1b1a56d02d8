#include "mtgl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "mtgl/config.hpp"
#include "mtgl/error.hpp"

namespace mtgl {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Matrix read_csv_matrix(const std::filesystem::path& path, std::optional<std::size_t> rows,
                       std::optional<std::size_t> cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path.string());
  std::vector<std::vector<double>> data;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw parse_error(path.string() + ": row " + std::to_string(row) + " is empty");
    std::vector<double> values;
    std::size_t start = 0;
    std::size_t col = 0;
    while (true) {
      ++col;
      const auto comma = line.find(',', start);
      const std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      double v = 0.0;
      const char* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end) {
        throw parse_error(path.string() + ": row " + std::to_string(row) + ", column " + std::to_string(col) +
                          ": not a number: '" + cell + "'");
      }
      values.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!data.empty() && values.size() != data.front().size()) {
      throw parse_error(path.string() + ": row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                        " columns, expected " + std::to_string(data.front().size()));
    }
    data.push_back(std::move(values));
  }
  if (data.empty()) throw parse_error(path.string() + ": file is empty");
  if (rows && data.size() != *rows) {
    throw parse_error(path.string() + ": has " + std::to_string(data.size()) + " rows, expected " +
                      std::to_string(*rows));
  }
  if (cols && data.front().size() != *cols) {
    throw parse_error(path.string() + ": has " + std::to_string(data.front().size()) + " columns, expected " +
                      std::to_string(*cols));
  }
  Matrix m(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = data[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

void write_csv_matrix(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw parse_error("failed writing " + path.string());
}

MultiTaskDataset read_dataset(const std::filesystem::path& manifest_path) {
  KeyValueConfig manifest = [&] {
    try {
      return KeyValueConfig::load(manifest_path);
    } catch (const config_error& e) {
      throw parse_error(e.what());
    }
  }();
  const auto base = manifest_path.parent_path();
  try {
    const std::size_t n = manifest.get_size("n", 0);
    const std::size_t M = manifest.get_size("M", 0);
    const std::size_t T = manifest.get_size("T", 0);
    if (n < 1 || M < 1 || T < 1) throw parse_error(manifest_path.string() + ": n, M and T must be positive");
    std::vector<Task> tasks;
    for (std::size_t t = 1; t <= T; ++t) {
      const std::filesystem::path xp = base / manifest.require("design." + std::to_string(t));
      const std::filesystem::path yp = base / manifest.require("response." + std::to_string(t));
      Matrix x = read_csv_matrix(xp, n, M);
      Matrix y = read_csv_matrix(yp, n, 1);
      tasks.push_back({std::move(x), y.col(0)});
    }
    manifest.reject_unknown();
    return MultiTaskDataset(std::move(tasks));
  } catch (const config_error& e) {
    throw parse_error(e.what());
  }
}

std::filesystem::path write_dataset(const MultiTaskDataset& data, const std::filesystem::path& dir,
                                    const std::string& stem) {
  std::filesystem::create_directories(dir);
  const auto manifest_path = dir / (stem + ".manifest");
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw parse_error("cannot write " + manifest_path.string());
  manifest << "n = " << data.n() << "\nM = " << data.M() << "\nT = " << data.T() << '\n';
  for (std::size_t t = 0; t < data.T(); ++t) {
    const std::string idx = std::to_string(t + 1);
    const std::string xname = stem + "_task" + idx + "_design.csv";
    const std::string yname = stem + "_task" + idx + "_response.csv";
    write_csv_matrix(data.task(t).design, dir / xname);
    write_csv_matrix(data.task(t).response, dir / yname);
    manifest << "design." << idx << " = " << xname << "\nresponse." << idx << " = " << yname << '\n';
  }
  return manifest_path;
}

GroupCoefficients read_coefficients(const std::filesystem::path& path) { return {read_csv_matrix(path)}; }

void write_coefficients(const GroupCoefficients& beta, const std::filesystem::path& path) {
  write_csv_matrix(beta.values, path);
}

namespace {

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  if (report.kind == ExperimentKind::lasso_comparison) {
    out << "T,replicate,seed,group_prediction_error,lasso_prediction_error,group_wins,group_converged,lasso_converged\n";
    for (const auto& m : report.replicates) {
      out << m.T << ',' << m.index << ',' << m.seed << ',' << format_double(m.prediction_error) << ','
          << format_double(m.lasso_prediction_error) << ','
          << flag(m.converged && m.lasso_converged && m.prediction_error <= m.lasso_prediction_error) << ','
          << flag(m.converged) << ',' << flag(m.lasso_converged) << '\n';
    }
    return;
  }
  out << "replicate,seed,converged,iterations,kkt_residual,prediction_error,err_21,err_2,err_2inf";
  const std::size_t np = report.replicates.empty() ? 0 : report.replicates.front().err_2p.size();
  for (std::size_t i = 0; i < np; ++i) out << ",err_2p_" << i + 1;
  out << ",average_error,m_hat,correlation_stat,support_exact,sign_exact,phi_max,c_prime,confidence";
  if (!report.replicates.empty()) {
    for (const auto& c : report.replicates.front().checks) out << ',' << c.name << "_lhs," << c.name << "_rhs," << c.name << "_holds";
  }
  out << '\n';
  for (const auto& m : report.replicates) {
    out << m.index << ',' << m.seed << ',' << flag(m.converged) << ',' << m.iterations << ','
        << format_double(m.kkt_residual) << ',' << format_double(m.prediction_error) << ','
        << format_double(m.err_21) << ',' << format_double(m.err_2) << ',' << format_double(m.err_2inf);
    for (double v : m.err_2p) out << ',' << format_double(v);
    out << ',' << format_double(m.average_error) << ',' << m.m_hat << ',' << format_double(m.correlation_stat) << ','
        << flag(m.support_exact) << ',' << flag(m.sign_exact) << ',' << format_double(m.phi_max) << ','
        << format_double(m.c_prime) << ',' << format_double(m.confidence);
    for (const auto& c : m.checks) out << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ',' << flag(c.holds);
    out << '\n';
  }
}

void write_report_summary(const ExperimentReport& report, std::ostream& out) {
  out << "kind=" << to_string(report.kind) << '\n';
  out << "regime=" << to_string(report.plan.regime) << '\n';
  out << "lambda=" << format_double(report.plan.lambda) << '\n';
  if (report.plan.regime == NoiseRegime::gaussian) out << "q=" << format_double(report.plan.q) << '\n';
  out << "confidence=" << format_double(report.plan.confidence) << '\n';
  if (report.kind != ExperimentKind::lasso_comparison) {
    out << "kappa=" << format_double(report.kappa.kappa) << '\n';
    if (report.kappa.kappa2s) out << "kappa2s=" << format_double(*report.kappa.kappa2s) << '\n';
    out << "kappa_source=" << report.kappa.provenance << '\n';
  }
  if (report.threshold) out << "threshold=" << format_double(*report.threshold) << '\n';
  out << "replicates=" << report.replicates.size() << '\n';
  out << "non_converged=" << report.non_converged << '\n';
  for (const auto& row : report.lasso_comparison) {
    const std::string p = "T" + std::to_string(row.T) + ".";
    out << p << "group_mean_error=" << format_double(row.group_mean_error) << '\n';
    out << p << "lasso_mean_error=" << format_double(row.lasso_mean_error) << '\n';
    out << p << "ratio=" << format_double(row.ratio) << '\n';
    out << p << "win_fraction=" << format_double(row.win_fraction) << '\n';
  }
  for (const auto& c : report.coverage) {
    const std::string p = c.name + ".";
    if (!std::isnan(c.rhs_value)) out << p << "rhs=" << format_double(c.rhs_value) << '\n';
    out << p << "coverage=" << format_double(c.coverage) << '\n';
    out << p << "required=" << format_double(c.required_confidence) << '\n';
    if (!std::isnan(c.rhs_value)) out << p << "max_ratio=" << format_double(c.max_ratio) << '\n';
    out << p << "pass=" << (c.pass ? "true" : "false") << '\n';
  }
  out << "all_pass=" << (report.all_pass() ? "true" : "false") << '\n';
}

void write_average_csv(const AverageEstimate& avg, std::ostream& out) {
  for (Eigen::Index j = 0; j < avg.a_hat.size(); ++j) {
    out << j + 1 << ',' << format_double(avg.a_hat[j]) << ',' << format_double(avg.a_tilde[j]) << ','
        << avg.signs[j] << '\n';
  }
}

}  // namespace mtgl
