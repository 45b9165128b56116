#include "kac/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "kac/bitstream.hpp"
#include "kac/exact_stats.hpp"
#include "kac/wasserstein.hpp"

namespace kac {

namespace {

inline unsigned digit_at(std::span<const std::uint64_t> words, std::uint64_t i0) {
  return static_cast<unsigned>((words[i0 / 64] >> (63 - i0 % 64)) & 1U);
}

double step_sum(const StepFunction& phi, std::span<const std::uint64_t> words, std::uint64_t n) {
  const unsigned r = phi.level();
  const std::uint64_t mask = (std::uint64_t{1} << r) - 1;
  std::uint64_t idx = extract_digits(words, 0, r);
  double s = phi[static_cast<std::size_t>(idx)];
  // Sliding the r-digit index by one digit is T applied once.
  for (std::uint64_t k = 1; k < n; ++k) {
    idx = ((idx << 1) | digit_at(words, k + r - 1)) & mask;
    s += phi[static_cast<std::size_t>(idx)];
  }
  return s;
}

double fourier_sum(const FourierFunction& f, std::span<const std::uint64_t> words,
                   std::uint64_t n) {
  constexpr unsigned B = kMaxWindowWidth;
  constexpr std::uint64_t mask = (std::uint64_t{1} << B) - 1;
  std::uint64_t reg = extract_digits(words, 0, B);
  double s = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    const double t = std::ldexp(static_cast<double>(reg), -static_cast<int>(B));
    s += eval_fourier_at_cosine(f, std::cos(2.0 * std::numbers::pi * t));
    if (k + 1 == n) break;
    reg = ((reg << 1) | digit_at(words, k + B)) & mask;
  }
  return s;
}

double checked_sigma(const FunctionSpec& spec, std::uint64_t n) {
  const double sigma = sigma_n(spec, n);
  if (!(sigma * sigma > kDegeneracyTolerance * static_cast<double>(n))) {
    throw std::domain_error("degenerate function: zero variance");
  }
  return sigma;
}

void check_budget(std::uint64_t n, std::size_t N, const SamplingBudget& budget) {
  if (n == 0) throw std::invalid_argument("horizon n must be positive");
  if (N == 0) throw std::invalid_argument("replicate count must be positive");
  if (N > budget.max_replicates || n > budget.max_horizon ||
      static_cast<double>(n) * static_cast<double>(N) > static_cast<double>(budget.max_work)) {
    throw std::invalid_argument("budget exceeded: n=" + std::to_string(n) +
                                ", N=" + std::to_string(N));
  }
}

// Runs body(j, words) for every replicate j in [0, N) over contiguous blocks.
template <class Body>
void for_each_replicate(std::uint64_t n, std::size_t N, std::uint64_t master_seed,
                        unsigned threads, Body body) {
  const std::size_t word_count = (n + kGuardDigits + 63) / 64;
  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> words(word_count);
    for (std::size_t j = begin; j < end; ++j) {
      fill_digit_words(replicate_seed(master_seed, j), words);
      body(j, std::span<const std::uint64_t>(words));
    }
  };
  const std::size_t workers = std::min<std::size_t>(threads, N);
  if (workers <= 1) {
    run(0, N);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (N + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(N, begin + chunk);
    if (begin < end) pool.emplace_back(run, begin, end);
  }
}

}  // namespace

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KAC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

double SampleSet::sample_mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return values.empty() ? 0.0 : s / static_cast<double>(values.size());
}

double SampleSet::sample_variance() const {
  if (values.size() < 2) return 0.0;
  const double m = sample_mean();
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

double birkhoff_sum(const FunctionSpec& spec, std::span<const std::uint64_t> words,
                    std::uint64_t n) {
  return spec.is_step() ? step_sum(spec.step(), words, n) : fourier_sum(spec.fourier(), words, n);
}

SampleSet sample_W(const FunctionSpec& spec, std::uint64_t n, std::size_t N,
                   std::uint64_t master_seed, const SamplingOptions& options) {
  check_budget(n, N, options.budget);
  SampleSet out;
  out.n = n;
  out.N = N;
  out.master_seed = master_seed;
  out.function_digest = spec.digest();
  out.sigma_n = checked_sigma(spec, n);
  out.values.resize(N);
  const double shift = static_cast<double>(n) * spec.mu();
  for_each_replicate(n, N, master_seed, resolve_thread_count(options.threads),
                     [&](std::size_t j, std::span<const std::uint64_t> words) {
                       out.values[j] = (birkhoff_sum(spec, words, n) - shift) / out.sigma_n;
                     });
  return out;
}

std::pair<SampleSet, SampleSet> sample_W_paired(const FunctionSpec& a, const FunctionSpec& b,
                                                std::uint64_t n, std::size_t N,
                                                std::uint64_t master_seed,
                                                const SamplingOptions& options) {
  check_budget(n, N, options.budget);
  auto init = [&](const FunctionSpec& spec) {
    SampleSet s;
    s.n = n;
    s.N = N;
    s.master_seed = master_seed;
    s.function_digest = spec.digest();
    s.sigma_n = checked_sigma(spec, n);
    s.values.resize(N);
    return s;
  };
  SampleSet sa = init(a);
  SampleSet sb = init(b);
  const double shift_a = static_cast<double>(n) * a.mu();
  const double shift_b = static_cast<double>(n) * b.mu();
  for_each_replicate(n, N, master_seed, resolve_thread_count(options.threads),
                     [&](std::size_t j, std::span<const std::uint64_t> words) {
                       sa.values[j] = (birkhoff_sum(a, words, n) - shift_a) / sa.sigma_n;
                       sb.values[j] = (birkhoff_sum(b, words, n) - shift_b) / sb.sigma_n;
                     });
  return {std::move(sa), std::move(sb)};
}

double paired_l2_distance(const FunctionSpec& f, const FunctionSpec& phi, std::uint64_t n,
                          std::size_t N, std::uint64_t master_seed,
                          const SamplingOptions& options) {
  const auto [wf, wphi] = sample_W_paired(f, phi, n, N, master_seed, options);
  return l2_paired(wf.values, wphi.values);
}

}  // namespace kac
