#include "mtgl/synth.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mtgl/error.hpp"
#include "mtgl/random.hpp"

namespace mtgl {

namespace {

constexpr std::uint64_t kDesignStream = 0xD0;
constexpr std::uint64_t kSupportStream = 0x5A;
constexpr std::uint64_t kAmplitudeStream = 0xA3;
constexpr std::uint64_t kNoiseStream = 0x4E;

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x(rows, cols);
  // Row-major fill so a row is one draw of the covariate vector.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = gauss(rng);
  }
  return x;
}

void normalize_columns(Matrix& x) {
  const double root_n = std::sqrt(static_cast<double>(x.rows()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm == 0.0) throw diagnostic_error("generated design has a zero column");
    x.col(j) *= root_n / norm;
  }
}

std::vector<std::size_t> draw_support(std::size_t M, std::size_t s, std::uint64_t seed) {
  Rng rng = stream(seed, kSupportStream);
  std::vector<std::size_t> idx(M);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < s; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, M - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(s);
  return idx;
}

GroupCoefficients fill_support(const SignalSpec& signal, std::size_t M, std::size_t T, double magnitude,
                               bool constant, std::uint64_t seed) {
  GroupCoefficients beta = GroupCoefficients::zeros(M, T);
  Rng rng = stream(seed, kAmplitudeStream);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t j : draw_support(M, signal.s, seed)) {
    const double group_sign = signal.signs == SignRule::per_group && coin(rng) ? -1.0 : 1.0;
    for (std::size_t t = 0; t < T; ++t) {
      double v = constant ? magnitude : magnitude * gauss(rng);
      if (signal.signs == SignRule::positive) v = std::abs(v);
      if (signal.signs == SignRule::per_group) v = group_sign * std::abs(v);
      if (signal.signs == SignRule::per_entry && coin(rng)) v = -v;
      beta.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(t)) = v;
    }
  }
  return beta;
}

}  // namespace

DesignKind parse_design_kind(std::string_view name) {
  if (name == "gaussian-iid") return DesignKind::gaussian_iid;
  if (name == "ar1") return DesignKind::ar1;
  if (name == "orthogonal") return DesignKind::orthogonal;
  throw invalid_parameter("unknown design '" + std::string(name) + "' (expected gaussian-iid, ar1 or orthogonal)");
}

AmplitudeRule parse_amplitude_rule(std::string_view name) {
  if (name == "constant") return AmplitudeRule::constant;
  if (name == "gaussian") return AmplitudeRule::gaussian;
  throw invalid_parameter("unknown amplitude rule '" + std::string(name) + "' (expected constant or gaussian)");
}

SignRule parse_sign_rule(std::string_view name) {
  if (name == "positive") return SignRule::positive;
  if (name == "per-group") return SignRule::per_group;
  if (name == "per-entry") return SignRule::per_entry;
  throw invalid_parameter("unknown sign rule '" + std::string(name) + "' (expected positive, per-group or per-entry)");
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "student-t") return NoiseKind::student_t;
  if (name == "rademacher") return NoiseKind::rademacher;
  throw invalid_parameter("unknown noise '" + std::string(name) + "' (expected gaussian, student-t or rademacher)");
}

void validate(const DesignSpec& design) {
  if (design.n < 1) throw invalid_parameter("design needs n >= 1");
  if (design.M < 2) throw invalid_parameter("design needs M >= 2");
  if (design.T < 1) throw invalid_parameter("design needs T >= 1");
  if (design.kind == DesignKind::ar1 && !(std::abs(design.rho) < 1.0)) {
    throw invalid_parameter("ar1 design needs |rho| < 1");
  }
  if (design.kind == DesignKind::orthogonal && design.n < design.M) {
    throw invalid_parameter("orthogonal design needs n >= M (n=" + std::to_string(design.n) +
                            ", M=" + std::to_string(design.M) + ")");
  }
}

void validate(const SignalSpec& signal, std::size_t M) {
  if (signal.s < 1 || signal.s > M) throw invalid_parameter("signal sparsity must lie in [1, M]");
  if (!(signal.amplitude >= 0.0)) throw invalid_parameter("signal amplitude must be nonnegative");
}

void validate(const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0)) throw invalid_parameter("noise sigma must be nonnegative");
  if (noise.kind == NoiseKind::student_t && !(noise.nu > 2.0)) {
    throw invalid_parameter("student-t noise needs nu > 2 for finite variance");
  }
}

std::vector<Matrix> generate_designs(const DesignSpec& design, std::uint64_t seed) {
  validate(design);
  const auto n = static_cast<Eigen::Index>(design.n);
  const auto M = static_cast<Eigen::Index>(design.M);
  std::vector<Matrix> out;
  out.reserve(design.T);
  for (std::size_t t = 0; t < design.T; ++t) {
    Rng rng = stream(seed, kDesignStream, t);
    Matrix x = gaussian_matrix(n, M, rng);
    if (design.kind == DesignKind::ar1) {
      // x_j = rho x_{j-1} + sqrt(1 - rho^2) e_j gives Cov(x_j, x_k) = rho^|j-k|.
      const double innovation = std::sqrt(1.0 - design.rho * design.rho);
      for (Eigen::Index j = 1; j < M; ++j) x.col(j) = design.rho * x.col(j - 1) + innovation * x.col(j);
    } else if (design.kind == DesignKind::orthogonal) {
      Eigen::HouseholderQR<Matrix> qr(x);
      x = qr.householderQ() * Matrix::Identity(n, M);
      x *= std::sqrt(static_cast<double>(design.n));
    }
    if (design.normalize || design.kind == DesignKind::orthogonal) normalize_columns(x);
    out.push_back(std::move(x));
  }
  return out;
}

GroupCoefficients generate_beta(const SignalSpec& signal, std::size_t M, std::size_t T, std::uint64_t seed) {
  validate(signal, M);
  return fill_support(signal, M, T, signal.amplitude, signal.rule == AmplitudeRule::constant, seed);
}

Matrix generate_noise(const NoiseSpec& noise, std::size_t n, std::size_t T, std::uint64_t seed) {
  validate(noise);
  Matrix w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    Rng rng = stream(seed, kNoiseStream, t);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::student_t_distribution<double> student(noise.nu);
    std::bernoulli_distribution coin(0.5);
    const double t_scale = noise.kind == NoiseKind::student_t ? std::sqrt((noise.nu - 2.0) / noise.nu) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      switch (noise.kind) {
        case NoiseKind::gaussian: v = gauss(rng); break;
        case NoiseKind::student_t: v = t_scale * student(rng); break;
        case NoiseKind::rademacher: v = coin(rng) ? 1.0 : -1.0; break;
      }
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = noise.sigma * v;
    }
  }
  return w;
}

SyntheticProblem generate_dataset(const DesignSpec& design, const GroupCoefficients& beta_star,
                                  const NoiseSpec& noise, std::uint64_t seed) {
  validate(design);
  if (beta_star.M() != design.M || beta_star.T() != design.T) {
    throw dimension_error("truth shape does not match the design spec");
  }
  auto designs = generate_designs(design, seed);
  Matrix w = generate_noise(noise, design.n, design.T, seed);
  std::vector<Task> tasks;
  tasks.reserve(design.T);
  for (std::size_t t = 0; t < design.T; ++t) {
    const auto col = static_cast<Eigen::Index>(t);
    Vector y = designs[t] * beta_star.values.col(col) + w.col(col);
    tasks.push_back({std::move(designs[t]), std::move(y)});
  }
  return {MultiTaskDataset(std::move(tasks)), beta_star, std::move(w)};
}

SyntheticProblem generate_dataset(const DesignSpec& design, const SignalSpec& signal, const NoiseSpec& noise,
                                  std::uint64_t seed) {
  validate(design);
  return generate_dataset(design, generate_beta(signal, design.M, design.T, seed), noise, seed);
}

GroupCoefficients generate_beta_for_selection(const SignalSpec& signal, std::size_t M, std::size_t T, double tau,
                                              double margin, std::uint64_t seed) {
  validate(signal, M);
  if (!(margin > 2.0)) throw invalid_parameter("beta-min margin must exceed 2, got " + std::to_string(margin));
  if (!(tau > 0.0)) throw invalid_parameter("threshold must be positive");
  return fill_support(signal, M, T, margin * tau, true, seed);
}

}  // namespace mtgl
