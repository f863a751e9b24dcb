#include "spectra/cli/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "spectra/cli/config.hpp"
#include "spectra/cli/manifest.hpp"
#include "spectra/error.hpp"
#include "spectra/incoherence.hpp"
#include "spectra/io.hpp"
#include "spectra/montecarlo.hpp"
#include "spectra/parallel.hpp"
#include "spectra/validation.hpp"

namespace spectra::cli {

namespace {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
      return kExitParse;
    case ErrorKind::CalibrationFailed:
      return kExitFailure;
    default:
      return kExitSpec;
  }
}

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, std::string_view content) {
    write_text_file(dir_ / name, content);
    files_.push_back(name);
  }

  void finish(RunManifest manifest) {
    manifest.finished = utc_timestamp();
    manifest.outputs = files_;
    manifest.outputs.push_back("manifest.json");
    manifest.write(dir_);
  }

  const fs::path& path() const noexcept { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

struct CommonOptions {
  std::string config;
  std::string out;
  int workers = -1;  // -1: take from the config
};

RunManifest start_manifest(const std::string& command, const LoadedConfig& cfg, Seed seed) {
  RunManifest m;
  m.command = command;
  m.config_hash = cfg.hash;
  m.master_seed = seed;
  m.tool_version = SPECTRA_VERSION;
  m.started = utc_timestamp();
  return m;
}

LoadedConfig load(const CommonOptions& opts) {
  LoadedConfig cfg = load_config(opts.config);
  apply_seed_override(cfg, seed_from_env());
  return cfg;
}

int get_or_workers(const Json& doc) {
  return doc.contains("workers") && doc.at("workers").is_number_integer() ? doc.at("workers").get<int>() : 0;
}

int resolve_workers(const CommonOptions& opts, int from_config) {
  return opts.workers >= 0 ? opts.workers : from_config;
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Json report_json(const CoverageReport& r) {
  return {{"theorem", std::string(to_string(r.theorem))},
          {"t", r.t},
          {"epsilon", r.epsilon},
          {"theoretical_failure", r.theoretical_failure},
          {"empirical_failure", r.empirical_failure},
          {"wilson_halfwidth", r.wilson_halfwidth},
          {"failures", r.failures},
          {"trials", r.trials},
          {"per_index_violations", r.per_index_violations}};
}

int cmd_coverage(const CommonOptions& opts) {
  const LoadedConfig loaded = load(opts);
  ExperimentConfig cfg = parse_experiment(loaded.doc);
  cfg.workers = resolve_workers(opts, cfg.workers);
  OutputDir out(opts.out.empty() ? fs::path("out/coverage") : fs::path(opts.out));
  RunManifest manifest = start_manifest("coverage", loaded, cfg.seed);

  const CoverageRun run = run_coverage(cfg);

  Json reports = Json::array();
  for (const auto& r : run.reports) reports.push_back(report_json(r));
  const Json summary = {{"family", std::string(to_string(cfg.spec.family))},
                        {"n", cfg.n},
                        {"d", cfg.d()},
                        {"trials", cfg.trials},
                        {"guardrail", {{"trials", run.guardrail.trials}, {"violations", run.guardrail.violations}}},
                        {"reports", reports}};
  out.write("coverage_summary.csv", coverage_summary_csv(run.reports));
  out.write("coverage_by_index.csv", coverage_index_csv(run.reports));
  out.write("coverage.json", summary.dump(2) + "\n");
  out.finish(manifest);

  std::printf("%-28s %10s %12s %12s %12s\n", "theorem", "t", "theoretical", "empirical", "wilson");
  for (const auto& r : run.reports) {
    std::printf("%-28s %10s %12s %12s %12s\n", std::string(to_string(r.theorem)).c_str(), fmt(r.t).c_str(),
                fmt(r.theoretical_failure).c_str(), fmt(r.empirical_failure).c_str(),
                fmt(r.wilson_halfwidth).c_str());
  }
  std::printf("guardrail: %lld violations over %d trials\n", run.guardrail.violations, run.guardrail.trials);
  std::printf("wrote %s\n", out.path().string().c_str());
  return run.guardrail.ok() ? kExitOk : kExitInvariant;
}

int cmd_sweep(const CommonOptions& opts) {
  const LoadedConfig loaded = load(opts);
  SweepConfig cfg = parse_sweep(loaded.doc);
  cfg.workers = resolve_workers(opts, cfg.workers);
  OutputDir out(opts.out.empty() ? fs::path("out/sweep") : fs::path(opts.out));
  RunManifest manifest = start_manifest("sweep", loaded, cfg.seed);

  const RateFit fit = run_rate_fit(cfg);

  std::string csv = "x,median_max_relative_deviation\n";
  for (std::size_t i = 0; i < fit.x_values.size(); ++i) {
    csv += format_double(fit.x_values[i]) + ',' + format_double(fit.y_values[i]) + '\n';
  }
  const Json j = {{"axis", cfg.axis == SweepAxis::SampleCount ? "n" : "d"},
                  {"slope", fit.slope},
                  {"intercept", fit.intercept},
                  {"r_squared", fit.r_squared},
                  {"x_values", fit.x_values},
                  {"y_values", fit.y_values},
                  {"trials", cfg.trials}};
  out.write("rate_fit.csv", csv);
  out.write("rate_fit.json", j.dump(2) + "\n");
  out.finish(manifest);

  for (std::size_t i = 0; i < fit.x_values.size(); ++i) {
    std::printf("%12s %14s\n", fmt(fit.x_values[i]).c_str(), fmt(fit.y_values[i]).c_str());
  }
  std::printf("slope %.4f  intercept %.4f  r^2 %.4f\n", fit.slope, fit.intercept, fit.r_squared);
  return kExitOk;
}

int cmd_incoherence(const CommonOptions& opts) {
  const LoadedConfig loaded = load(opts);
  const IncoherenceConfig cfg = parse_incoherence(loaded.doc);
  const int workers = resolve_workers(opts, get_or_workers(loaded.doc));
  OutputDir out(opts.out.empty() ? fs::path("out/incoherence") : fs::path(opts.out));
  RunManifest manifest = start_manifest("incoherence", loaded, cfg.seed);

  const IncoherenceEstimate est = empirical_incoherence(cfg.spec, cfg.n, cfg.trials, cfg.seed, workers);
  const IsotropicIdentity identity =
      check_isotropic_identity(cfg.spec, cfg.pairs, derive_seed(cfg.seed, 0, "identity"));
  const MomentEstimate kp = estimate_Kp(cfg.spec, 2 * cfg.p, cfg.kp_samples, cfg.kp_directions,
                                        derive_seed(cfg.seed, 0, "incoherence-kp"));
  const double corollary = corollary_incoherence_bound(cfg.n, cfg.p, kp.value, cfg.constants);
  const double deviation = expectation_deviation_bound(est.empirical_m, cfg.n, cfg.spec.d, cfg.constants);

  const Json j = {{"empirical_m", est.empirical_m},
                  {"trials", est.trials},
                  {"n", est.n},
                  {"d", est.d},
                  {"identity", {{"pairs", cfg.pairs},
                                {"mean_sq_inner", identity.mean_sq_inner},
                                {"mean_sq_norm", identity.mean_sq_norm}}},
                  {"p", cfg.p},
                  {"K2p", kp.value},
                  {"corollary_bound", corollary},
                  {"expectation_deviation_bound", deviation}};
  out.write("incoherence.json", j.dump(2) + "\n");
  out.finish(manifest);

  std::printf("empirical m      %s  (n=%lld, d=%lld, trials=%d)\n", fmt(est.empirical_m).c_str(),
              static_cast<long long>(est.n), static_cast<long long>(est.d), est.trials);
  std::printf("E<z1,z2>^2       %s\nE||z||^2         %s\n", fmt(identity.mean_sq_inner).c_str(),
              fmt(identity.mean_sq_norm).c_str());
  std::printf("K(%d)            %s\ncorollary bound  %s\ndeviation bound  %s\n", 2 * cfg.p,
              fmt(kp.value).c_str(), fmt(corollary).c_str(), fmt(deviation).c_str());
  return kExitOk;
}

int cmd_compare(const CommonOptions& opts) {
  const LoadedConfig loaded = load(opts);
  const CompareConfig cfg = parse_compare(loaded.doc);
  const int workers = resolve_workers(opts, get_or_workers(loaded.doc));
  OutputDir out(opts.out.empty() ? fs::path("out/compare") : fs::path(opts.out));
  RunManifest manifest = start_manifest("compare", loaded, cfg.seed);

  const UniformRelativeReport r = run_uniform_vs_relative(cfg.n, cfg.d, cfg.decay, cfg.trials, cfg.seed, cfg.t, workers);

  std::string csv = "index,sigma_eig,uniform_lower,uniform_upper,relative_lower,relative_upper,flagged\n";
  for (const auto& row : r.rows) {
    csv += std::to_string(row.index) + ',' + format_double(row.sigma_eig) + ',' + format_double(row.uniform_lower) +
           ',' + format_double(row.uniform_upper) + ',' + format_double(row.relative_lower) + ',' +
           format_double(row.relative_upper) + ',' + (row.flagged ? "true" : "false") + '\n';
  }
  const Json j = {{"n", r.n},
                  {"d", r.d},
                  {"decay", r.decay},
                  {"trials", r.trials},
                  {"t", r.t},
                  {"mean_spectral_error", r.mean_spectral_error},
                  {"threshold_index", r.threshold_index}};
  out.write("compare.csv", csv);
  out.write("compare.json", j.dump(2) + "\n");
  out.finish(manifest);

  std::printf("%6s %12s %13s %13s %8s\n", "index", "lambda", "uniform_lo", "relative_lo", "flagged");
  for (const auto& row : r.rows) {
    std::printf("%6d %12s %13s %13s %8s\n", row.index, fmt(row.sigma_eig).c_str(), fmt(row.uniform_lower).c_str(),
                fmt(row.relative_lower).c_str(), row.flagged ? "yes" : "");
  }
  std::printf("mean ||Sigma_hat - Sigma|| = %s; uniform lower bound vacuous from index %d\n",
              fmt(r.mean_spectral_error).c_str(), r.threshold_index);
  return kExitOk;
}

int cmd_calibrate(const CommonOptions& opts) {
  const LoadedConfig loaded = load(opts);
  CalibrationConfig cfg = parse_calibration(loaded.doc);
  cfg.workers = resolve_workers(opts, cfg.workers);
  OutputDir out(opts.out.empty() ? fs::path("out/calibrate") : fs::path(opts.out));
  RunManifest manifest = start_manifest("calibrate", loaded, cfg.seed);

  const CalibrationResult r = calibrate_constant(cfg);

  std::string csv = "n,d,coverage,holdout_coverage,holdout_wilson\n";
  Json evidence = Json::array();
  for (const auto& e : r.evidence) {
    csv += std::to_string(e.n) + ',' + std::to_string(e.d) + ',' + format_double(e.coverage) + ',' +
           format_double(e.holdout_coverage) + ',' + format_double(e.holdout_wilson) + '\n';
    evidence.push_back({{"n", e.n},
                        {"d", e.d},
                        {"coverage", e.coverage},
                        {"holdout_coverage", e.holdout_coverage},
                        {"holdout_wilson", e.holdout_wilson}});
  }
  const Json j = {{"theorem", std::string(to_string(r.theorem))},
                  {"value", r.value},
                  {"target_coverage", cfg.target_coverage},
                  {"t", cfg.t},
                  {"trials", cfg.trials},
                  {"holdout_meets_target", r.holdout_meets_target},
                  {"evidence", evidence}};
  out.write("calibration.csv", csv);
  out.write("calibration.json", j.dump(2) + "\n");
  out.finish(manifest);

  std::printf("%s: smallest constant %s\n", std::string(to_string(r.theorem)).c_str(), fmt(r.value, "%.8g").c_str());
  for (const auto& e : r.evidence) {
    std::printf("  n=%-7lld d=%-7lld coverage %s  held-out %s (+/- %s)\n", static_cast<long long>(e.n),
                static_cast<long long>(e.d), fmt(e.coverage).c_str(), fmt(e.holdout_coverage).c_str(),
                fmt(e.holdout_wilson).c_str());
  }
  std::printf("held-out check: %s\n", r.holdout_meets_target ? "meets target" : "below target");
  return kExitOk;
}

struct ValidateOptions {
  SandwichValidationConfig cfg;
  std::string out;
  int workers = -1;
};

int cmd_validate(ValidateOptions opts, bool seed_given) {
  if (!seed_given) {
    if (const auto env = seed_from_env()) opts.cfg.seed = *env;
  }
  opts.cfg.workers = opts.workers >= 0 ? opts.workers : 0;
  const SandwichValidationReport report = validate_sandwich(opts.cfg);

  std::string csv = "check,shape,instances,checks,violations,worst_excess\n";
  std::printf("%-20s %-5s %10s %10s %11s\n", "check", "shape", "instances", "checks", "violations");
  auto emit = [&](const char* name, const std::array<ShapeTally, 3>& group) {
    for (const auto& t : group) {
      std::printf("%-20s %-5s %10d %10lld %11lld  %s\n", name, std::string(to_string(t.shape)).c_str(), t.instances,
                  t.checks, t.violations, t.violations == 0 ? "pass" : "FAIL");
      csv += std::string(name) + ',' + std::string(to_string(t.shape)) + ',' + std::to_string(t.instances) + ',' +
             std::to_string(t.checks) + ',' + std::to_string(t.violations) + ',' + format_double(t.worst_excess) +
             '\n';
    }
  };
  emit("ostrowski", report.ostrowski);
  emit("variational-lower", report.variational_lower);
  emit("variational-upper", report.variational_upper);
  if (!opts.out.empty()) write_text_file(fs::path(opts.out) / "validate_sandwich.csv", csv);
  std::printf("%s\n", report.all_pass() ? "all checks passed" : "violations found");
  return report.all_pass() ? kExitOk : kExitInvariant;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Relative eigenvalue bounds for empirical second-moment matrices", "spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SPECTRA_VERSION));

  ValidateOptions validate;
  auto* v = app.add_subcommand("validate-sandwich", "Randomized checks of the deterministic sandwich and count lemmas");
  v->add_option("--instances", validate.cfg.instances, "Instances per shape regime")->capture_default_str();
  v->add_option("--variational-instances", validate.cfg.variational_instances, "Instances per count lemma")
      ->capture_default_str();
  v->add_option("--max-dim", validate.cfg.max_dim, "Largest n and d")->capture_default_str()->check(CLI::PositiveNumber);
  auto* seed_opt = v->add_option("--seed", validate.cfg.seed, "Master seed (SPECTRA_SEED when omitted)");
  v->add_flag("--inject-violation", validate.cfg.inject_violation, "Corrupt one instance (negative-path check)");
  v->add_option("--workers", validate.workers, "Worker threads (default: logical cores)");
  v->add_option("--out", validate.out, "Directory for validate_sandwich.csv");

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const CommonOptions&);
    CommonOptions opts;
  };
  std::vector<Sub> subs = {
      {"coverage", "Empirical coverage of the probabilistic bounds", cmd_coverage, {}},
      {"sweep", "Log-log convergence rate of the relative deviation", cmd_sweep, {}},
      {"incoherence", "Empirical incoherence parameter and its bounds", cmd_incoherence, {}},
      {"compare", "Uniform (Weyl) against relative intervals under spectral decay", cmd_compare, {}},
      {"calibrate", "Smallest constant reaching a coverage target", cmd_calibrate, {}},
  };
  std::vector<CLI::App*> handles;
  for (auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("config", s.opts.config, "JSON run configuration")->required();
    sub->add_option("--out", s.opts.out, "Output directory");
    sub->add_option("--workers", s.opts.workers, "Worker threads (default: config value, else logical cores)");
    handles.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*v) return cmd_validate(validate, seed_opt->count() > 0);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (*handles[i]) return subs[i].fn(subs[i].opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace spectra::cli
