#include "kac/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "kac/bitstream.hpp"
#include "kac/wasserstein.hpp"

namespace kac {

namespace {

constexpr double kSlackMultiplier = 3.0;

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::uint64_t x) { return std::to_string(x); }

const FunctionSpec& require_function(const ExperimentConfig& config) {
  if (!config.function) throw std::invalid_argument("no function specified");
  return *config.function;
}

void require_non_degenerate(const FunctionSpec& spec) {
  const bool degenerate = spec.is_step() ? spec.step().is_degenerate()
                                         : spec.fourier().l2_norm_sq() <= kDegeneracyTolerance;
  if (degenerate) throw std::domain_error("degenerate function: zero variance");
}

// Index in [0, n); the modulo bias is below n / 2^64.
std::size_t scaled_index(std::uint64_t word, std::size_t n) {
  return static_cast<std::size_t>(word % n);
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::simulate: return "simulate";
    case Mode::exact_stats: return "exact-stats";
    case Mode::certify: return "certify";
    case Mode::convergence: return "convergence";
    case Mode::approximate: return "approximate";
    case Mode::project: return "project";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::simulate, Mode::exact_stats, Mode::certify, Mode::convergence,
                 Mode::approximate, Mode::project}) {
    if (name == to_string(m)) return m;
  }
  if (name == "exact_stats") return Mode::exact_stats;
  return std::nullopt;
}

void validate(const ExperimentConfig& config) {
  const bool sampling = config.mode == Mode::simulate || config.mode == Mode::certify ||
                        config.mode == Mode::convergence || config.mode == Mode::approximate;
  if (sampling) {
    if (config.n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
      if (config.n_grid[i] < 1) throw std::invalid_argument("n_grid entries must be >= 1");
      if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
        throw std::invalid_argument("n_grid must be strictly increasing");
      }
    }
    if (config.replicates < 1) throw std::invalid_argument("replicates must be positive");
  }
  const bool convergence_like = config.mode == Mode::certify ||
                                config.mode == Mode::convergence ||
                                config.mode == Mode::approximate;
  if (convergence_like && config.replicates < 100) {
    throw std::invalid_argument("replicates must be at least 100 for this mode");
  }
  if ((config.mode == Mode::approximate || config.mode == Mode::project) && config.levels.empty()) {
    throw std::invalid_argument("levels must not be empty");
  }
  if (convergence_like && config.bootstrap_resamples < 2) {
    throw std::invalid_argument("bootstrap_resamples must be at least 2");
  }
}

std::uint64_t bootstrap_seed(std::uint64_t master_seed, unsigned b) {
  return replicate_seed(mix64(master_seed), std::uint64_t{b} + 1);
}

double bootstrap_w1_se(std::span<const double> samples, unsigned resamples,
                       std::uint64_t master_seed) {
  if (resamples < 2) throw std::invalid_argument("bootstrap needs at least 2 resamples");
  const std::size_t n = samples.size();
  std::vector<double> resample(n);
  std::vector<double> stats;
  stats.reserve(resamples);
  for (unsigned b = 0; b < resamples; ++b) {
    const std::uint64_t seed = bootstrap_seed(master_seed, b);
    for (std::size_t i = 0; i < n; ++i) resample[i] = samples[scaled_index(digit_word(seed, i), n)];
    stats.push_back(w1_to_normal(resample).distance);
  }
  double m = 0.0;
  for (double s : stats) m += s;
  m /= resamples;
  double v = 0.0;
  for (double s : stats) v += (s - m) * (s - m);
  return std::sqrt(v / (resamples - 1));
}

SlopeFit fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two paired points");
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log fit needs positive data");
    lx[i] = std::log2(x[i]);
    ly[i] = std::log2(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / static_cast<double>(n));
  return fit;
}

CsvTable ConvergenceResult::table() const {
  CsvTable t({"n", "sigma_n", "w1_empirical", "stein_bound", "sample_mean", "sample_var"});
  for (const auto& r : rows) {
    t.row({fmt(r.n), fmt(r.sigma_n), fmt(r.w1_empirical),
           r.stein_bound ? fmt(*r.stein_bound) : std::string{}, fmt(r.sample_mean),
           fmt(r.sample_var)});
  }
  return t;
}

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  validate(config);
  const FunctionSpec& spec = require_function(config);
  require_non_degenerate(spec);
  ConvergenceResult result;
  std::vector<double> ns, ws;
  for (std::uint64_t n : config.n_grid) {
    const SampleSet s = sample_W(spec, n, config.replicates, config.master_seed, config.sampling);
    ConvergenceRow row;
    row.n = n;
    row.sigma_n = s.sigma_n;
    row.w1_empirical = w1_to_normal(s.values).distance;
    if (spec.is_step()) row.stein_bound = stein_bound(spec.step(), n);
    row.sample_mean = s.sample_mean();
    row.sample_var = s.sample_variance();
    result.rows.push_back(row);
    ns.push_back(static_cast<double>(n));
    ws.push_back(row.w1_empirical);
  }
  if (ns.size() >= 2) result.fit = fit_log_slope(ns, ws);
  return result;
}

bool CertifyResult::all_within() const {
  return std::all_of(rows.begin(), rows.end(), [](const CertifyRow& r) { return r.within_bound; });
}

CsvTable CertifyResult::table() const {
  CsvTable t({"n", "sigma_n", "stein_bound", "w1_empirical", "bootstrap_se", "ratio",
              "within_bound"});
  for (const auto& r : rows) {
    t.row({fmt(r.n), fmt(r.sigma_n), fmt(r.stein_bound), fmt(r.w1_empirical),
           fmt(r.bootstrap_se), fmt(r.ratio), r.within_bound ? "1" : "0"});
  }
  return t;
}

CertifyResult run_certify(const ExperimentConfig& config) {
  validate(config);
  const FunctionSpec& spec = require_function(config);
  if (!spec.is_step()) throw std::invalid_argument("certification requires step function");
  require_non_degenerate(spec);
  CertifyResult result;
  for (std::uint64_t n : config.n_grid) {
    const SampleSet s = sample_W(spec, n, config.replicates, config.master_seed, config.sampling);
    CertifyRow row;
    row.n = n;
    row.sigma_n = s.sigma_n;
    row.stein_bound = stein_bound(spec.step(), n);
    row.w1_empirical = w1_to_normal(s.values).distance;
    row.bootstrap_se = bootstrap_w1_se(s.values, config.bootstrap_resamples, config.master_seed);
    row.ratio = row.w1_empirical / row.stein_bound;
    row.within_bound = row.w1_empirical <= row.stein_bound + kSlackMultiplier * row.bootstrap_se;
    result.rows.push_back(row);
  }
  return result;
}

bool ApproximationResult::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const ApproximationRow& r) {
    return r.lemma_holds && r.triangle_holds;
  });
}

CsvTable ApproximationResult::table() const {
  CsvTable t({"n", "level", "projection_l2_error", "paired_l2", "w1_paired", "w1_f", "w1_phi",
              "bootstrap_se", "lemma_ok", "triangle_ok"});
  for (const auto& r : rows) {
    t.row({fmt(r.n), std::to_string(r.level), fmt(r.projection_l2_error), fmt(r.paired_l2),
           fmt(r.w1_paired), fmt(r.w1_f), fmt(r.w1_phi), fmt(r.bootstrap_se),
           r.lemma_holds ? "1" : "0", r.triangle_holds ? "1" : "0"});
  }
  return t;
}

ApproximationResult run_approximate(const ExperimentConfig& config) {
  validate(config);
  const FunctionSpec& spec = require_function(config);
  if (spec.is_step()) throw std::invalid_argument("approximation study requires a fourier function");
  const FourierFunction& f = spec.fourier();
  require_non_degenerate(spec);

  ApproximationResult result;
  std::vector<std::pair<unsigned, StepFunction>> projections;
  for (unsigned r : config.levels) {
    StepFunction phi = project_to_step(f, r);
    if (phi.is_degenerate()) {
      std::cerr << "warning: projection at level " << r << " is degenerate; skipped\n";
      result.skipped_levels.push_back(r);
      continue;
    }
    projections.emplace_back(r, std::move(phi));
  }
  if (projections.empty()) throw std::domain_error("every projection level is degenerate");

  for (std::uint64_t n : config.n_grid) {
    for (const auto& [r, phi] : projections) {
      const auto [wf, wphi] =
          sample_W_paired(spec, FunctionSpec(phi), n, config.replicates, config.master_seed,
                          config.sampling);
      ApproximationRow row;
      row.n = n;
      row.level = r;
      row.projection_l2_error = projection_error_l2(f, r);
      row.paired_l2 = l2_paired(wf.values, wphi.values);
      row.w1_paired = w1_paired(wf.values, wphi.values).distance;
      row.w1_f = w1_to_normal(wf.values).distance;
      row.w1_phi = w1_to_normal(wphi.values).distance;
      row.bootstrap_se = bootstrap_w1_se(wf.values, config.bootstrap_resamples, config.master_seed);
      row.lemma_holds = row.w1_paired <= row.paired_l2;
      row.triangle_holds =
          row.w1_f <= row.w1_paired + row.w1_phi + kSlackMultiplier * row.bootstrap_se;
      result.rows.push_back(row);
    }
  }
  return result;
}

CsvTable exact_stats_table(const StepFunction& phi) {
  const ExactStats s = compute_exact_stats(phi);
  std::vector<std::string> cols = {"r", "var0", "m3", "m4"};
  std::vector<std::string> cells = {std::to_string(s.level), fmt(s.var0), fmt(s.abs_moment3),
                                    fmt(s.abs_moment4)};
  for (std::size_t k = 0; k < s.rho.size(); ++k) {
    cols.push_back("rho_" + std::to_string(k + 1));
    cells.push_back(fmt(s.rho[k]));
  }
  for (auto c : {"C3", "sigma_sq_limit", "D"}) cols.emplace_back(c);
  cells.push_back(fmt(s.C3));
  cells.push_back(fmt(s.sigma_sq_limit));
  cells.push_back(std::to_string(s.D));
  CsvTable t(std::move(cols));
  t.row(std::move(cells));
  return t;
}

CsvTable SimulateResult::table() const {
  CsvTable t({"n", "N", "seed", "sigma_n", "sample_mean", "sample_var", "w1_to_normal"});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SampleSet& s = sets[i];
    t.row({fmt(s.n), std::to_string(s.N), fmt(s.master_seed), fmt(s.sigma_n),
           fmt(s.sample_mean()), fmt(s.sample_variance()), fmt(w1[i])});
  }
  return t;
}

SimulateResult run_simulate(const ExperimentConfig& config) {
  validate(config);
  const FunctionSpec& spec = require_function(config);
  require_non_degenerate(spec);
  SimulateResult result;
  for (std::uint64_t n : config.n_grid) {
    result.sets.push_back(
        sample_W(spec, n, config.replicates, config.master_seed, config.sampling));
    result.w1.push_back(w1_to_normal(result.sets.back().values).distance);
  }
  return result;
}

CsvTable projection_table(const FourierFunction& f, unsigned level) {
  const StepFunction phi = project_to_step(f, level);
  CsvTable t({"level", "i", "left", "right", "value"});
  const double width = std::ldexp(1.0, -static_cast<int>(level));
  for (std::size_t i = 0; i < phi.size(); ++i) {
    t.row({std::to_string(level), std::to_string(i), fmt(static_cast<double>(i) * width),
           fmt(static_cast<double>(i + 1) * width), fmt(phi[i])});
  }
  return t;
}

}  // namespace kac
