#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "mtgl/experiments.hpp"
#include "mtgl/model.hpp"
#include "mtgl/selection.hpp"

namespace mtgl {

/// Shortest text with 17 significant digits, so doubles round-trip exactly.
std::string format_double(double v);

/// Headerless CSV, "." decimal point, one row per line. Errors name file, row and column.
Matrix read_csv_matrix(const std::filesystem::path& path, std::optional<std::size_t> rows = std::nullopt,
                       std::optional<std::size_t> cols = std::nullopt);
void write_csv_matrix(const Matrix& m, const std::filesystem::path& path);

/**
 * Dataset manifest (key = value):
 *   n = <rows>, M = <columns>, T = <tasks>,
 *   design.<t> = <csv path>, response.<t> = <csv path>   for t = 1..T.
 * Relative paths are resolved against the manifest's directory.
 */
MultiTaskDataset read_dataset(const std::filesystem::path& manifest_path);

/// Writes <dir>/<stem>.manifest plus per-task CSVs; returns the manifest path.
std::filesystem::path write_dataset(const MultiTaskDataset& data, const std::filesystem::path& dir,
                                    const std::string& stem = "dataset");

/// M x T CSV.
GroupCoefficients read_coefficients(const std::filesystem::path& path);
void write_coefficients(const GroupCoefficients& beta, const std::filesystem::path& path);

/// One row per replicate with a header line.
void write_report_csv(const ExperimentReport& report, std::ostream& out);
/// key = value summary block.
void write_report_summary(const ExperimentReport& report, std::ostream& out);

/// Average estimate as CSV rows: index,a_hat,a_tilde,sign (1-based index).
void write_average_csv(const AverageEstimate& avg, std::ostream& out);

}  // namespace mtgl
