// kac: command-line front end for the doubling-map CLT experiments.
//
// Exit codes: 0 success, 1 usage or input error, 2 a checked inequality failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kac/config.hpp"
#include "kac/csv.hpp"
#include "kac/experiments.hpp"
#include "kac/functions.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct Overrides {
  std::string config;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string n_grid;
  std::optional<std::size_t> replicates;
  std::string dump_samples;
  std::string step;
  std::string fourier;
  double beta = 1.0;
  std::optional<double> decay_M;
  std::string levels;
  std::optional<unsigned> bootstrap;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "TOML experiment config");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "CSV output path (default: standard output)");
  cmd->add_option("--step", o.step, "Step function values, 2^r comma separated reals");
  cmd->add_option("--fourier", o.fourier, "Cosine coefficients a_1,a_2,...");
  cmd->add_option("--beta", o.beta, "Decay exponent of the coefficient envelope")->capture_default_str();
  cmd->add_option("--M", o.decay_M, "Decay constant of the coefficient envelope");
}

void add_sampling(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--n-grid", o.n_grid, "Horizons: '16,64,256' or '2^4..2^12'");
  cmd->add_option("--replicates", o.replicates, "Replicates N per horizon");
  cmd->add_option("--bootstrap", o.bootstrap, "Bootstrap resamples for W1 standard errors");
}

// `subcommand` fixes the mode; for `run` it is empty and the mode comes from
// --mode or the config file.
kac::ExperimentConfig build_config(const Overrides& o, std::optional<kac::Mode> subcommand) {
  kac::ExperimentConfig cfg;
  if (!o.config.empty()) cfg = kac::load_config_file(o.config);
  if (subcommand) {
    cfg.mode = *subcommand;
  } else if (!o.mode.empty()) {
    auto m = kac::parse_mode(o.mode);
    if (!m) throw std::invalid_argument("unknown mode '" + o.mode + "'");
    cfg.mode = *m;
  }
  if (o.seed) cfg.master_seed = *o.seed;
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.n_grid.empty()) cfg.n_grid = kac::parse_n_grid(o.n_grid);
  if (o.replicates) cfg.replicates = *o.replicates;
  if (!o.dump_samples.empty()) cfg.dump_samples = o.dump_samples;
  if (o.bootstrap) cfg.bootstrap_resamples = *o.bootstrap;
  if (!o.step.empty() && !o.fourier.empty()) {
    throw std::invalid_argument("give either --step or --fourier, not both");
  }
  if (!o.step.empty()) cfg.function = kac::step_from_values(kac::parse_real_list(o.step));
  if (!o.fourier.empty()) {
    auto coeffs = kac::parse_real_list(o.fourier);
    if (coeffs.size() > cfg.max_terms) coeffs.resize(cfg.max_terms);
    cfg.function = o.decay_M ? kac::FourierFunction(std::move(coeffs), *o.decay_M, o.beta)
                             : kac::FourierFunction::with_default_envelope(std::move(coeffs), o.beta);
  }
  if (!o.levels.empty()) {
    cfg.levels.clear();
    for (std::uint64_t l : kac::parse_n_grid(o.levels)) cfg.levels.push_back(static_cast<unsigned>(l));
  }
  return cfg;
}

void emit(const kac::CsvTable& table, const kac::ExperimentConfig& cfg) {
  if (cfg.out.empty()) {
    table.write(std::cout);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + cfg.out + "'");
  table.write(f);
}

const kac::FunctionSpec& function_of(const kac::ExperimentConfig& cfg) {
  if (!cfg.function) throw std::invalid_argument("no function given (use --step, --fourier or --config)");
  return *cfg.function;
}

int run(const kac::ExperimentConfig& cfg) {
  using kac::Mode;
  switch (cfg.mode) {
    case Mode::exact_stats: {
      const auto& spec = function_of(cfg);
      if (!spec.is_step()) throw std::invalid_argument("exact-stats requires a step function");
      emit(kac::exact_stats_table(spec.step()), cfg);
      return 0;
    }
    case Mode::project: {
      kac::validate(cfg);
      const auto& spec = function_of(cfg);
      if (spec.is_step()) throw std::invalid_argument("project requires a fourier function");
      for (unsigned r : cfg.levels) {
        const kac::StepFunction phi = kac::project_to_step(spec.fourier(), r);
        std::cout << "level " << r << ": L2 projection error "
                  << kac::format_double(kac::projection_error_l2(spec.fourier(), r))
                  << (phi.is_degenerate() ? " (degenerate)" : "") << '\n';
      }
      if (cfg.levels.size() != 1 && !cfg.out.empty()) {
        throw std::invalid_argument("--out with project takes a single level");
      }
      if (cfg.levels.size() == 1) emit(kac::projection_table(spec.fourier(), cfg.levels[0]), cfg);
      return 0;
    }
    case Mode::simulate: {
      if (!cfg.dump_samples.empty() && cfg.n_grid.size() != 1) {
        throw std::invalid_argument("--dump-samples needs a single horizon in --n-grid");
      }
      const auto result = kac::run_simulate(cfg);
      emit(result.table(), cfg);
      if (!cfg.dump_samples.empty()) {
        std::ofstream f(cfg.dump_samples, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + cfg.dump_samples + "'");
        for (double v : result.sets.front().values) f << kac::format_double(v) << '\n';
      }
      return 0;
    }
    case Mode::convergence: {
      const auto result = kac::run_convergence(cfg);
      emit(result.table(), cfg);
      if (result.rows.size() >= 2) {
        std::cout << "log2-log2 slope of w1_empirical: " << kac::format_double(result.fit.slope)
                  << " (rms residual " << kac::format_double(result.fit.residual) << ")\n";
      }
      return 0;
    }
    case Mode::certify: {
      const auto result = kac::run_certify(cfg);
      emit(result.table(), cfg);
      for (const auto& r : result.rows) {
        std::cout << "n=" << r.n << " bound=" << kac::format_double(r.stein_bound)
                  << " w1=" << kac::format_double(r.w1_empirical)
                  << (r.within_bound ? " ok" : " VIOLATION") << '\n';
      }
      return result.all_within() ? 0 : kExitViolation;
    }
    case Mode::approximate: {
      const auto result = kac::run_approximate(cfg);
      emit(result.table(), cfg);
      for (unsigned r : result.skipped_levels) std::cout << "skipped degenerate level " << r << '\n';
      if (!result.all_hold()) std::cout << "inequality chain VIOLATED\n";
      return result.all_hold() ? 0 : kExitViolation;
    }
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central limit theorem experiments for the doubling map"};
  app.require_subcommand(1);
  Overrides o;

  auto* simulate = app.add_subcommand("simulate", "Sample W_n and summarize each horizon");
  add_common(simulate, o);
  add_sampling(simulate, o);
  simulate->add_option("--dump-samples", o.dump_samples, "Write raw W_n values, one per line");

  auto* exact = app.add_subcommand("exact-stats", "Exact moments, correlations and limits of a step function");
  add_common(exact, o);

  auto* certify = app.add_subcommand("certify", "Compare empirical W1 with the dependency-neighbourhood bound");
  add_common(certify, o);
  add_sampling(certify, o);

  auto* convergence = app.add_subcommand("convergence", "W1 to the normal law across a grid of horizons");
  add_common(convergence, o);
  add_sampling(convergence, o);

  auto* approximate = app.add_subcommand("approximate", "Couple a cosine series with its step projections");
  add_common(approximate, o);
  add_sampling(approximate, o);
  approximate->add_option("--levels", o.levels, "Projection levels, e.g. '2,4,6,8'");

  auto* project = app.add_subcommand("project", "Project a cosine series onto dyadic step functions");
  add_common(project, o);
  project->add_option("--levels", o.levels, "Projection levels");

  auto* run_cmd = app.add_subcommand("run", "Run the mode named in the config (or --mode)");
  add_common(run_cmd, o);
  add_sampling(run_cmd, o);
  run_cmd->add_option("--mode", o.mode, "Mode override");
  run_cmd->add_option("--dump-samples", o.dump_samples, "Write raw W_n values (simulate)");
  run_cmd->add_option("--levels", o.levels, "Projection levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    std::optional<kac::Mode> mode;
    if (simulate->parsed()) mode = kac::Mode::simulate;
    if (exact->parsed()) mode = kac::Mode::exact_stats;
    if (certify->parsed()) mode = kac::Mode::certify;
    if (convergence->parsed()) mode = kac::Mode::convergence;
    if (approximate->parsed()) mode = kac::Mode::approximate;
    if (project->parsed()) mode = kac::Mode::project;
    return run(build_config(o, mode));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
