#pragma once
// JSON run configurations ("schema": 1) and their translation into the
// library's experiment structs.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "spectra/bounds.hpp"
#include "spectra/distributions.hpp"
#include "spectra/montecarlo.hpp"

namespace spectra::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct LoadedConfig {
  Json doc;             // after the SPECTRA_SEED override
  std::string canonical;  // sorted keys, no whitespace
  std::string hash;     // SHA-256 of `canonical`, hex
};

/// Reads and validates the schema field. IoError when the file is missing,
/// ParseError when it is not a schema-1 JSON object.
LoadedConfig load_config(const std::filesystem::path& path);

/// Value of SPECTRA_SEED, when set. ParseError when it is not an integer.
std::optional<Seed> seed_from_env();

/// Applies the override to doc["seed"] and recomputes canonical/hash.
void apply_seed_override(LoadedConfig& cfg, std::optional<Seed> seed);

/// Square-root factor from one of
///   {"form": "identity"}
///   {"form": "diag", "values": [...]}        entries of Sigma^{1/2}
///   {"form": "cov_diag", "values": [...]}    entries of Sigma
///   {"form": "cov_decay", "rate": r}         Sigma = diag(exp(-r i))
///   {"form": "matrix", "rows": d, "cols": d, "data": [...]}  Sigma, row-major
CovarianceFactor parse_factor(const Json& j, Index d);

DistributionSpec parse_distribution(const Json& j);
ConstantsConfig parse_constants(const Json& j);

ExperimentConfig parse_experiment(const Json& doc);
SweepConfig parse_sweep(const Json& doc);
CalibrationConfig parse_calibration(const Json& doc);

struct IncoherenceConfig {
  DistributionSpec spec;
  Index n = 2;
  int trials = 1000;
  Seed seed = 0;
  int p = 2;
  Index kp_samples = 100000;
  int kp_directions = 32;
  Index pairs = 100000;
  ConstantsConfig constants;
};
IncoherenceConfig parse_incoherence(const Json& doc);

struct CompareConfig {
  Index n = 1;
  Index d = 1;
  double decay = 1.0;
  int trials = 100;
  Seed seed = 0;
  double t = 0.0;
};
CompareConfig parse_compare(const Json& doc);

/// Matrix in the {"rows", "cols", "data"} object form.
RowMatrix parse_matrix_json(const Json& j);
Json matrix_to_json(const RowMatrix& m);

}  // namespace spectra::cli
