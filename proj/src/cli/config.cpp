#include "spectra/cli/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <string>

#include "spectra/cli/manifest.hpp"
#include "spectra/error.hpp"
#include "spectra/io.hpp"

namespace spectra::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <typename T>
T as(const Json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    parse_fail(std::string("key '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return as<T>(j.at(key), key);
}

Index get_index(const Json& j, const char* key) {
  const auto v = as<long long>(require(j, key), key);
  return static_cast<Index>(v);
}

Index get_index_or(const Json& j, const char* key, Index fallback) {
  return j.contains(key) ? get_index(j, key) : fallback;
}

Seed get_seed(const Json& j, const char* key, Seed fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) parse_fail(std::string("key '") + key + "' must be an integer");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto s = v.get<long long>();
  if (s < 0) parse_fail(std::string("key '") + key + "' must be >= 0");
  return static_cast<Seed>(s);
}

std::vector<double> double_list(const Json& j, const char* key) {
  if (!j.is_array()) parse_fail(std::string("key '") + key + "' must be an array");
  return as<std::vector<double>>(j, key);
}

TheoremTag parse_tag(const Json& j) {
  const auto name = as<std::string>(j, "theorem");
  const auto tag = theorem_from_string(name);
  if (!tag) parse_fail("unknown theorem '" + name + "'");
  return *tag;
}

BoundInputs parse_inputs(const Json& doc) {
  BoundInputs in;
  in.K = get_or<double>(doc, "K", in.K);
  in.t1 = get_or<double>(doc, "t1", in.t1);
  in.m_bound = get_or<double>(doc, "m_bound", in.m_bound);
  in.p = get_or<int>(doc, "p", in.p);
  in.K2p = get_or<double>(doc, "K2p", in.K2p);
  return in;
}

std::vector<double> parse_t_values(const Json& doc) {
  if (doc.contains("t_grid")) return double_list(doc.at("t_grid"), "t_grid");
  if (doc.contains("target_failure")) {
    std::vector<double> ts;
    for (double delta : double_list(doc.at("target_failure"), "target_failure")) {
      ts.push_back(gaussian_t_for_failure(delta));
    }
    return ts;
  }
  parse_fail("give either 't_grid' or 'target_failure'");
}

}  // namespace

LoadedConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::IoError, "config not found: " + path.string());
  const std::string text = read_text_file(path);
  LoadedConfig cfg;
  try {
    cfg.doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
  if (!cfg.doc.is_object()) parse_fail("config must be a JSON object");
  if (get_or<int>(cfg.doc, "schema", -1) != kSchemaVersion) {
    parse_fail("config must declare \"schema\": " + std::to_string(kSchemaVersion));
  }
  apply_seed_override(cfg, std::nullopt);
  return cfg;
}

std::optional<Seed> seed_from_env() {
  const char* raw = std::getenv("SPECTRA_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || *raw == '-') parse_fail("SPECTRA_SEED must be a non-negative integer");
  return static_cast<Seed>(v);
}

void apply_seed_override(LoadedConfig& cfg, std::optional<Seed> seed) {
  if (seed) cfg.doc["seed"] = *seed;
  cfg.canonical = cfg.doc.dump();
  cfg.hash = sha256_hex(cfg.canonical);
}

RowMatrix parse_matrix_json(const Json& j) {
  const Index rows = get_index(j, "rows");
  const Index cols = get_index(j, "cols");
  if (rows < 1 || cols < 1) parse_fail("matrix needs rows, cols >= 1");
  const auto data = double_list(require(j, "data"), "data");
  if (data.size() != static_cast<std::size_t>(rows * cols)) parse_fail("matrix data has the wrong length");
  RowMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = data[static_cast<std::size_t>(i * cols + k)];
  }
  return m;
}

Json matrix_to_json(const RowMatrix& m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CovarianceFactor parse_factor(const Json& j, Index d) {
  const auto form = as<std::string>(require(j, "form"), "form");
  auto check_len = [&](const std::vector<double>& v) {
    if (v.size() != static_cast<std::size_t>(d)) parse_fail("covariance values must have d entries");
  };
  if (form == "identity") return CovarianceFactor::diagonal(std::vector<double>(static_cast<std::size_t>(d), 1.0));
  if (form == "diag") {
    auto v = double_list(require(j, "values"), "values");
    check_len(v);
    return CovarianceFactor::diagonal(std::move(v));
  }
  if (form == "cov_diag") {
    auto v = double_list(require(j, "values"), "values");
    check_len(v);
    for (double& x : v) {
      if (!(x >= 0.0)) throw Error(ErrorKind::NotPSD, "covariance diagonal must be >= 0");
      x = std::sqrt(x);
    }
    return CovarianceFactor::diagonal(std::move(v));
  }
  if (form == "cov_decay") {
    return CovarianceFactor::exponential_decay(d, as<double>(require(j, "rate"), "rate"));
  }
  if (form == "matrix") {
    const RowMatrix m = parse_matrix_json(j);
    if (m.rows() != d || m.cols() != d) parse_fail("covariance matrix must be d x d");
    return CovarianceFactor::dense(psd_sqrt(SymMatrix(Eigen::MatrixXd(m))));
  }
  parse_fail("unknown covariance form '" + form + "'");
}

DistributionSpec parse_distribution(const Json& j) {
  DistributionSpec spec;
  const auto family_name = as<std::string>(require(j, "family"), "family");
  const auto family = family_from_string(family_name);
  if (!family) parse_fail("unknown family '" + family_name + "'");
  spec.family = *family;
  spec.d = get_index(j, "d");
  if (spec.d < 1) throw Error(ErrorKind::SpecError, "d must be >= 1");
  if (j.contains("sigma")) spec.sigma_factor = parse_factor(j.at("sigma"), spec.d);
  if (j.contains("entry_law")) {
    const auto law_name = as<std::string>(j.at("entry_law"), "entry_law");
    const auto law = entry_law_from_string(law_name);
    if (!law) parse_fail("unknown entry law '" + law_name + "'");
    spec.entry_law = *law;
  }
  spec.norm_ratio = get_or<double>(j, "norm_ratio", spec.norm_ratio);
  spec.seed_stream = get_or<std::string>(j, "seed_stream", spec.seed_stream);
  spec.validate();
  return spec;
}

ConstantsConfig parse_constants(const Json& j) {
  ConstantsConfig c;
  if (!j.is_object()) parse_fail("'constants' must be an object");
  const std::pair<const char*, double*> fields[] = {
      {"subgaussian_C", &c.subgaussian_C},       {"bounded_norm_c", &c.bounded_norm_c},
      {"entries_highdim_C", &c.entries_highdim_C}, {"rows_highdim_C_K", &c.rows_highdim_C_K},
      {"rows_highdim_c_K", &c.rows_highdim_c_K},   {"rosenthal_C", &c.rosenthal_C},
      {"square_C_K", &c.square_C_K},             {"square_c_K", &c.square_c_K},
      {"square_C_tilde", &c.square_C_tilde},     {"incoherence_C", &c.incoherence_C},
  };
  for (const auto& [key, ptr] : fields) *ptr = get_or<double>(j, key, *ptr);
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& f : fields) known = known || item.key() == f.first;
    if (!known) parse_fail("unknown constant '" + item.key() + "'");
  }
  c.validate();
  return c;
}

ExperimentConfig parse_experiment(const Json& doc) {
  ExperimentConfig cfg;
  cfg.spec = parse_distribution(require(doc, "distribution"));
  if (doc.contains("downstream_sigma")) cfg.downstream_sigma = parse_factor(doc.at("downstream_sigma"), cfg.spec.d);
  cfg.n = get_index(doc, "n");
  cfg.trials = get_or<int>(doc, "trials", 1);
  cfg.seed = get_seed(doc, "seed", 0);
  if (doc.contains("theorems") && !(doc.at("theorems").is_string() && doc.at("theorems") == "auto")) {
    const Json& list = doc.at("theorems");
    if (!list.is_array()) parse_fail("'theorems' must be an array or \"auto\"");
    for (const auto& item : list) cfg.theorems.push_back(parse_tag(item));
  }
  cfg.t_grid = parse_t_values(doc);
  if (doc.contains("constants")) cfg.constants = parse_constants(doc.at("constants"));
  cfg.inputs = parse_inputs(doc);
  cfg.workers = get_or<int>(doc, "workers", 0);
  return cfg;
}

SweepConfig parse_sweep(const Json& doc) {
  SweepConfig cfg;
  cfg.spec = parse_distribution(require(doc, "distribution"));
  const auto axis = as<std::string>(require(doc, "axis"), "axis");
  if (axis == "n") {
    cfg.axis = SweepAxis::SampleCount;
  } else if (axis == "d") {
    cfg.axis = SweepAxis::Dimension;
    cfg.fixed_n = get_index(doc, "fixed_n");
  } else {
    parse_fail("'axis' must be \"n\" or \"d\"");
  }
  cfg.grid = as<std::vector<Index>>(require(doc, "grid"), "grid");
  cfg.trials = get_or<int>(doc, "trials", cfg.trials);
  cfg.seed = get_seed(doc, "seed", 0);
  cfg.workers = get_or<int>(doc, "workers", 0);
  return cfg;
}

CalibrationConfig parse_calibration(const Json& doc) {
  CalibrationConfig cfg;
  cfg.theorem = parse_tag(require(doc, "theorem"));
  cfg.spec = parse_distribution(require(doc, "distribution"));
  const Json& grid = require(doc, "grid");
  if (!grid.is_array()) parse_fail("'grid' must be an array of [n, d] pairs");
  for (const auto& item : grid) {
    const auto pair = as<std::vector<Index>>(item, "grid");
    if (pair.size() != 2) parse_fail("'grid' entries must be [n, d]");
    cfg.grid.push_back({pair[0], pair[1]});
  }
  cfg.trials = get_or<int>(doc, "trials", cfg.trials);
  cfg.seed = get_seed(doc, "seed", 0);
  cfg.holdout_seed = get_seed(doc, "holdout_seed", cfg.seed + 1);
  cfg.t = as<double>(require(doc, "t"), "t");
  cfg.target_coverage = get_or<double>(doc, "target_coverage", cfg.target_coverage);
  if (doc.contains("constants")) cfg.base = parse_constants(doc.at("constants"));
  cfg.inputs = parse_inputs(doc);
  cfg.max_constant = get_or<double>(doc, "max_constant", cfg.max_constant);
  cfg.workers = get_or<int>(doc, "workers", 0);
  return cfg;
}

IncoherenceConfig parse_incoherence(const Json& doc) {
  IncoherenceConfig cfg;
  cfg.spec = parse_distribution(require(doc, "distribution"));
  cfg.n = get_index(doc, "n");
  cfg.trials = get_or<int>(doc, "trials", cfg.trials);
  cfg.seed = get_seed(doc, "seed", 0);
  cfg.p = get_or<int>(doc, "p", cfg.p);
  cfg.kp_samples = get_index_or(doc, "kp_samples", cfg.kp_samples);
  cfg.kp_directions = get_or<int>(doc, "kp_directions", cfg.kp_directions);
  cfg.pairs = get_index_or(doc, "pairs", cfg.pairs);
  if (doc.contains("constants")) cfg.constants = parse_constants(doc.at("constants"));
  return cfg;
}

CompareConfig parse_compare(const Json& doc) {
  CompareConfig cfg;
  cfg.n = get_index(doc, "n");
  cfg.d = get_index(doc, "d");
  cfg.decay = get_or<double>(doc, "decay", cfg.decay);
  cfg.trials = get_or<int>(doc, "trials", cfg.trials);
  cfg.seed = get_seed(doc, "seed", 0);
  if (doc.contains("t")) {
    cfg.t = as<double>(doc.at("t"), "t");
  } else {
    cfg.t = gaussian_t_for_failure(get_or<double>(doc, "target_failure", 0.05));
  }
  return cfg;
}

}  // namespace spectra::cli
