#pragma once

// TOML experiment configuration.
//
//   mode = "convergence"          # simulate | exact-stats | certify | convergence | approximate | project
//   seed = 42
//   replicates = 100000
//   n_grid = [16, 64, 256]        # or n_grid = "2^4..2^12"
//   levels = [2, 4, 6, 8]
//   out = "results.csv"
//   max_terms = 64
//   bootstrap_resamples = 20
//   threads = 0
//
//   [function.step]
//   level = 2
//   values = [3, 1, -1, -3]
//
//   # or
//   [function.fourier]
//   coeffs = [1.0, 0.5]
//   M = 2.0
//   beta = 1.0

#include <string>
#include <string_view>
#include <vector>

#include "kac/experiments.hpp"

namespace kac {

/// Parses TOML text. Throws std::invalid_argument with a descriptive message.
ExperimentConfig parse_config(std::string_view toml_text);

ExperimentConfig load_config_file(const std::string& path);

/// "16,64,256" or a power-of-two range "2^4..2^12".
std::vector<std::uint64_t> parse_n_grid(std::string_view text);

/// Comma separated reals, e.g. "3,1,-1,-3".
std::vector<double> parse_real_list(std::string_view text);

/// Step function from its 2^r values; the level is inferred from the count.
StepFunction step_from_values(std::vector<double> values);

}  // namespace kac
