#pragma once

// Experiment runner: convergence studies, bound certification and the
// step-function approximation study.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kac/csv.hpp"
#include "kac/exact_stats.hpp"
#include "kac/functions.hpp"
#include "kac/montecarlo.hpp"

namespace kac {

enum class Mode { simulate, exact_stats, certify, convergence, approximate, project };

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view name);

struct ExperimentConfig {
  Mode mode = Mode::convergence;
  std::optional<FunctionSpec> function;
  std::vector<std::uint64_t> n_grid;
  std::size_t replicates = 10'000;
  std::uint64_t master_seed = 42;
  /// CSV destination; empty means standard output.
  std::string out;
  std::string dump_samples;
  /// Projection levels for the approximation study and `project`.
  std::vector<unsigned> levels;
  /// Fourier series are truncated to this many terms on load.
  std::size_t max_terms = kDefaultMaxTerms;
  unsigned bootstrap_resamples = 20;
  SamplingOptions sampling;
};

/// Throws std::invalid_argument describing the first problem found.
void validate(const ExperimentConfig& config);

/// Seed of bootstrap resample b: replicate_seed(mix64(master), b + 1).
std::uint64_t bootstrap_seed(std::uint64_t master_seed, unsigned b);

/// Standard deviation of w1_to_normal over `resamples` bootstrap resamples.
double bootstrap_w1_se(std::span<const double> samples, unsigned resamples,
                       std::uint64_t master_seed);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square residual on the log2 scale.
  double residual = 0.0;
};

/// Ordinary least squares of log2 y on log2 x.
SlopeFit fit_log_slope(std::span<const double> x, std::span<const double> y);

struct ConvergenceRow {
  std::uint64_t n = 0;
  double sigma_n = 0.0;
  double w1_empirical = 0.0;
  std::optional<double> stein_bound;
  double sample_mean = 0.0;
  double sample_var = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  SlopeFit fit;
  CsvTable table() const;
};

ConvergenceResult run_convergence(const ExperimentConfig& config);

struct CertifyRow {
  std::uint64_t n = 0;
  double sigma_n = 0.0;
  double stein_bound = 0.0;
  double w1_empirical = 0.0;
  double bootstrap_se = 0.0;
  double ratio = 0.0;
  /// w1_empirical <= stein_bound + 3 * bootstrap_se
  bool within_bound = false;
};

struct CertifyResult {
  std::vector<CertifyRow> rows;
  bool all_within() const;
  CsvTable table() const;
};

/// Throws std::invalid_argument("certification requires step function") for Fourier input.
CertifyResult run_certify(const ExperimentConfig& config);

struct ApproximationRow {
  std::uint64_t n = 0;
  unsigned level = 0;
  double projection_l2_error = 0.0;
  double paired_l2 = 0.0;
  double w1_paired = 0.0;
  double w1_f = 0.0;
  double w1_phi = 0.0;
  double bootstrap_se = 0.0;
  /// w1_paired <= paired_l2
  bool lemma_holds = false;
  /// w1_f <= w1_paired + w1_phi + 3 * bootstrap_se
  bool triangle_holds = false;
};

struct ApproximationResult {
  std::vector<ApproximationRow> rows;
  std::vector<unsigned> skipped_levels;
  bool all_hold() const;
  CsvTable table() const;
};

/// Levels whose projection is degenerate are skipped (reported in
/// skipped_levels); throws if every level is degenerate.
ApproximationResult run_approximate(const ExperimentConfig& config);

CsvTable exact_stats_table(const StepFunction& phi);

struct SimulateResult {
  std::vector<SampleSet> sets;
  std::vector<double> w1;
  CsvTable table() const;
};

SimulateResult run_simulate(const ExperimentConfig& config);

CsvTable projection_table(const FourierFunction& f, unsigned level);

}  // namespace kac
