#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mtgl/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = mtgl::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mtgl_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bounds prints the regularization plan") {
  const auto r = run({"bounds", "--sigma", "1", "--n", "100", "--T", "4", "--M", "10", "--A", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda=0.33707") != std::string::npos);
  CHECK(r.out.find("q=2.25\n") != std::string::npos);
  CHECK(r.err.find("subcommand=bounds") != std::string::npos);
  const auto fv = run({"bounds", "--n", "100", "--T", "9", "--M", "32", "--regime", "finite-variance", "--delta", "3",
                       "--c-prime", "1"});
  CHECK(fv.code == 0);
  CHECK(fv.out.find("confidence=0.888") != std::string::npos);
}

TEST_CASE("validation failures exit with 1") {
  auto r = run({"bounds", "--n", "10", "--T", "4", "--M", "10", "--frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--frobnicate") != std::string::npos);
  CHECK(run({"bounds", "--n", "10", "--T", "4", "--M", "10", "--A", "8"}).code == 1);
  CHECK(run({"bounds", "--n", "10", "--T", "4", "--M", "10", "--A", "8", "--explore"}).code == 0);
  CHECK(run({"solve", "--data", "/nonexistent/x.manifest", "--lambda", "0.1", "--out", "/tmp/x.csv"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("gen, solve, select and check pipeline") {
  const auto dir = scratch("pipeline");
  std::ofstream(dir / "gen.cfg") << "design = orthogonal\nn = 40\nM = 12\nT = 3\ns = 2\namplitude = 3\nsigma = 0.5\nseed = 7\n";
  auto g = run({"gen", "--config", (dir / "gen.cfg").string(), "--out", (dir / "data").string()});
  REQUIRE(g.code == 0);
  const auto manifest = (dir / "data" / "dataset.manifest").string();
  auto s = run({"solve", "--data", manifest, "--lambda", "0.05", "--out", (dir / "beta.csv").string()});
  REQUIRE(s.code == 0);
  CHECK(slurp(dir / "beta.csv.report.txt").find("converged=true") != std::string::npos);
  auto sel = run({"select", "--beta", (dir / "beta.csv").string(), "--tau", "1.0", "--average",
                  (dir / "avg.csv").string()});
  CHECK(sel.code == 0);
  // selected indices equal the true support (1-based)
  const auto star = mtgl::read_coefficients(dir / "data" / "beta_star.csv");
  std::string expect;
  for (Eigen::Index j = 0; j < star.values.rows(); ++j)
    if (star.values.row(j).norm() > 0) expect += std::to_string(j + 1) + "\n";
  CHECK(sel.out == expect);
  // columns: index, a_hat, a_tilde, sign
  CHECK(mtgl::read_csv_matrix(dir / "avg.csv").cols() == 4);
  auto chk = run({"check", "--data", manifest, "--s", "2", "--alpha", "8", "--re-samples", "5"});
  CHECK(chk.code == 0);
  CHECK(chk.out.find("admissible.s2.alpha8=true") != std::string::npos);
  CHECK(chk.out.find("kappa_lower=") != std::string::npos);
}

TEST_CASE("experiment exit codes and outputs") {
  const auto dir = scratch("experiment");
  const std::string base =
      "kind = selection\ndesign = orthogonal\nn = 32\nM = 8\nT = 4\ns = 2\nreplicates = 5\nseed = 3\n"
      "bounds = sup_norm\n";
  std::ofstream(dir / "ok.cfg") << base;
  auto ok = run({"--run-manifest", (dir / "ok.manifest").string(), "experiment", "--config",
                 (dir / "ok.cfg").string(), "--out", (dir / "ok").string()});
  CHECK(ok.code == 0);
  CHECK(fs::exists(dir / "ok.csv"));
  CHECK(slurp(dir / "ok.summary.txt").find("all_pass=true") != std::string::npos);
  CHECK(slurp(dir / "ok.manifest").find("subcommand=experiment") != std::string::npos);
  CHECK(ok.err.empty());

  std::ofstream(dir / "fail.cfg") << base << "threshold_override = 1e9\n";
  auto fail = run({"experiment", "--config", (dir / "fail.cfg").string(), "--out", (dir / "fail").string()});
  CHECK(fail.code == 2);

  std::ofstream(dir / "typo.cfg") << base << "replicats = 5\n";
  auto typo = run({"experiment", "--config", (dir / "typo.cfg").string(), "--out", (dir / "typo").string()});
  CHECK(typo.code == 1);
  CHECK(typo.err.find("replicats") != std::string::npos);
}

TEST_CASE("outputs are identical across thread counts") {
  const auto dir = scratch("determinism");
  std::ofstream(dir / "e.cfg") << "design = orthogonal\nn = 32\nM = 8\nT = 4\ns = 2\nreplicates = 12\nseed = 9\n";
  for (const char* threads : {"1", "3"}) {
    REQUIRE(run({"--threads", threads, "experiment", "--config", (dir / "e.cfg").string(), "--out",
                 (dir / (std::string("e") + threads)).string()})
                .code == 0);
  }
  CHECK(slurp(dir / "e1.csv") == slurp(dir / "e3.csv"));
  CHECK(slurp(dir / "e1.summary.txt") == slurp(dir / "e3.summary.txt"));
}
