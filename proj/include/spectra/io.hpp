#pragma once
// Text serialization: shortest round-trip decimal formatting and the CSV
// layouts of matrices, interval lists, sandwich results and reports.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spectra/interval.hpp"
#include "spectra/linalg.hpp"
#include "spectra/montecarlo.hpp"
#include "spectra/sandwich.hpp"

namespace spectra {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double v);

/// Plain rows, no header.
std::string matrix_csv(const RowMatrix& m);
RowMatrix parse_matrix_csv(std::string_view text);

/// index,lower,upper,epsilon,theorem,failure_prob,vacuous_lower
std::string intervals_csv(const std::vector<BoundInterval>& intervals);

/// index,lower,middle,upper,regime
std::string sandwich_csv(const std::vector<SandwichResult>& results);

/// One row per (theorem, t).
std::string coverage_summary_csv(const std::vector<CoverageReport>& reports);
/// One row per (theorem, t, index).
std::string coverage_index_csv(const std::vector<CoverageReport>& reports);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace spectra
