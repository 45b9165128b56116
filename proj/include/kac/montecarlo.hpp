#pragma once

// Replicated sampling of W_n = (S_n - n mu) / sigma_n with
// S_n = sum_{k<n} f(T^k alpha) and alpha drawn as a digit stream.
//
// Replicate j uses the digit stream seeded by replicate_seed(master, j), so each
// value is a pure function of (function, n, master seed, j) and the output does
// not depend on how replicates are spread over threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kac/functions.hpp"

namespace kac {

/// Digits generated per replicate beyond the horizon.
inline constexpr std::size_t kGuardDigits = 64;

struct SamplingBudget {
  std::size_t max_replicates = 1'000'000;
  std::uint64_t max_horizon = std::uint64_t{1} << 20;
  /// Upper bound on n * N (function evaluations per sample set).
  std::uint64_t max_work = std::uint64_t{1} << 34;
};

struct SamplingOptions {
  /// 0 selects KAC_THREADS from the environment, else the hardware concurrency.
  unsigned threads = 0;
  SamplingBudget budget;
};

/// Number of worker threads actually used for `requested`.
unsigned resolve_thread_count(unsigned requested);

struct SampleSet {
  std::uint64_t n = 0;
  std::size_t N = 0;
  std::vector<double> values;
  std::uint64_t master_seed = 0;
  std::string function_digest;
  double sigma_n = 0.0;

  double sample_mean() const;
  /// Unbiased sample variance; zero for N = 1.
  double sample_variance() const;
};

/// S_n for one sample point given its packed digits (at least n + 53 of them
/// for Fourier functions, n + r - 1 for step functions).
double birkhoff_sum(const FunctionSpec& spec, std::span<const std::uint64_t> words,
                    std::uint64_t n);

/// N replicates of W_n. Throws std::domain_error for a degenerate function and
/// std::invalid_argument("budget exceeded") when n, N or n*N exceed the budget.
SampleSet sample_W(const FunctionSpec& spec, std::uint64_t n, std::size_t N,
                   std::uint64_t master_seed, const SamplingOptions& options = {});

/// W_n for two functions evaluated on the same digit stream in every replicate.
std::pair<SampleSet, SampleSet> sample_W_paired(const FunctionSpec& a, const FunctionSpec& b,
                                                std::uint64_t n, std::size_t N,
                                                std::uint64_t master_seed,
                                                const SamplingOptions& options = {});

/// sqrt((1/N) sum_j (W_n^f - W_n^phi)_j^2) under the common-stream coupling.
double paired_l2_distance(const FunctionSpec& f, const FunctionSpec& phi, std::uint64_t n,
                          std::size_t N, std::uint64_t master_seed,
                          const SamplingOptions& options = {});

}  // namespace kac
