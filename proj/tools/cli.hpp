#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mtgl/config.hpp"
#include "mtgl/experiments.hpp"
#include "mtgl/synth.hpp"

namespace mtgl::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { ok = 0, validation_error = 1, coverage_failure = 2, internal_failure = 3 };

/// Runs one subcommand (gen, solve, select, check, bounds, verify-lemmas,
/// experiment). args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

/// Problem specs from a gen/experiment config; consumes the keys it reads.
struct ProblemSpecs {
  DesignSpec design;
  SignalSpec signal;
  NoiseSpec noise;
};
ProblemSpecs problem_specs_from(KeyValueConfig& config);

/// Full experiment config; rejects unknown keys.
ExperimentConfig experiment_config_from(KeyValueConfig& config);

}  // namespace mtgl::cli
