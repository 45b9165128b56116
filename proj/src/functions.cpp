#include "kac/functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace kac {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

StepFunction::StepFunction(unsigned level, std::vector<double> values)
    : level_(level), values_(std::move(values)) {
  if (level_ < 1 || level_ > kMaxStepLevel) {
    throw std::invalid_argument("step level must be in [1, " + std::to_string(kMaxStepLevel) + "]");
  }
  if (values_.size() != (std::size_t{1} << level_)) {
    throw std::invalid_argument("step function at level " + std::to_string(level_) + " needs " +
                                std::to_string(std::size_t{1} << level_) + " values, got " +
                                std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("step values must be finite");
  }
}

double StepFunction::mean() const { return mean_of(values_); }

double StepFunction::variance() const {
  const double m = mean();
  double s = 0.0;
  for (double v : values_) s += (v - m) * (v - m);
  return s / static_cast<double>(values_.size());
}

double StepFunction::l2_norm_sq() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s / static_cast<double>(values_.size());
}

FourierFunction::FourierFunction(std::vector<double> coefficients, double decay_M,
                                 double decay_beta)
    : coefficients_(std::move(coefficients)), decay_M_(decay_M), decay_beta_(decay_beta) {
  if (coefficients_.empty()) throw std::invalid_argument("fourier series needs at least one term");
  if (!(decay_M_ > 0.0) || !std::isfinite(decay_M_)) {
    throw std::invalid_argument("decay constant M must be positive");
  }
  if (!(decay_beta_ > 0.5) || !std::isfinite(decay_beta_)) {
    throw std::invalid_argument("decay exponent beta must exceed 1/2");
  }
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const double a = coefficients_[i];
    if (!std::isfinite(a)) throw std::invalid_argument("fourier coefficients must be finite");
    const double m = static_cast<double>(i + 1);
    if (!(std::abs(a) < decay_M_ / std::pow(m, decay_beta_))) {
      throw std::invalid_argument("coefficient a_" + std::to_string(i + 1) +
                                  " violates the decay envelope |a_m| < M/m^beta");
    }
  }
}

FourierFunction FourierFunction::with_default_envelope(std::vector<double> coefficients,
                                                       double decay_beta) {
  double worst = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    worst = std::max(worst, std::abs(coefficients[i]) *
                                std::pow(static_cast<double>(i + 1), decay_beta));
  }
  const double M = worst > 0.0 ? 2.0 * worst : 1.0;
  return FourierFunction(std::move(coefficients), M, decay_beta);
}

double FourierFunction::l2_norm_sq() const {
  double s = 0.0;
  for (double a : coefficients_) s += a * a;
  return 0.5 * s;
}

double FourierFunction::abs_sum() const {
  double s = 0.0;
  for (double a : coefficients_) s += std::abs(a);
  return s;
}

FourierFunction FourierFunction::truncated(std::size_t max_terms) const {
  if (max_terms == 0) throw std::invalid_argument("max_terms must be positive");
  if (max_terms >= coefficients_.size()) return *this;
  return FourierFunction({coefficients_.begin(), coefficients_.begin() + max_terms}, decay_M_,
                         decay_beta_);
}

double FourierFunction::envelope_tail_l2_sq(std::size_t max_terms) const {
  // Explicit sum over a finite stretch, then the integral bound
  // sum_{m > K} m^-2b <= K^(1-2b) / (2b-1) for the remainder.
  const double two_beta = 2.0 * decay_beta_;
  const std::size_t K = std::max<std::size_t>(max_terms, 1) * 1024;
  double s = 0.0;
  for (std::size_t m = K; m > max_terms; --m) s += std::pow(static_cast<double>(m), -two_beta);
  s += std::pow(static_cast<double>(K), 1.0 - two_beta) / (two_beta - 1.0);
  return 0.5 * decay_M_ * decay_M_ * s;
}

FunctionSpec::FunctionSpec(StepFunction step) : fn_(std::move(step)), mu_(0.0) {
  mu_ = std::get<StepFunction>(fn_).mean();
}

FunctionSpec::FunctionSpec(FourierFunction fourier) : fn_(std::move(fourier)), mu_(0.0) {}

std::string FunctionSpec::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  std::span<const double> values;
  if (is_step()) {
    const std::uint64_t tag[2] = {1, step().level()};
    h = fnv1a(h, tag, sizeof tag);
    values = step().values();
  } else {
    const std::uint64_t tag[2] = {2, fourier().terms()};
    h = fnv1a(h, tag, sizeof tag);
    const double env[2] = {fourier().decay_M(), fourier().decay_beta()};
    h = fnv1a(h, env, sizeof env);
    values = fourier().coefficients();
  }
  h = fnv1a(h, values.data(), values.size_bytes());
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xF];
  return out;
}

double eval_step(const StepFunction& phi, const DyadicWindow& w) {
  if (w.width < phi.level()) throw std::invalid_argument("insufficient digits");
  return phi[static_cast<std::size_t>(w.digits >> (w.width - phi.level()))];
}

double eval_fourier_at_cosine(const FourierFunction& f, double x) {
  const auto a = f.coefficients();
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = a.size(); k >= 1; --k) {
    const double b0 = a[k - 1] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2;
}

double eval_fourier(const FourierFunction& f, double t) {
  return eval_fourier_at_cosine(f, std::cos(2.0 * std::numbers::pi * t));
}

StepFunction center(const StepFunction& phi) {
  const double m = phi.mean();
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (double& x : v) x -= m;
  return StepFunction(phi.level(), std::move(v));
}

double mean(const FunctionSpec& spec) { return spec.mu(); }

double sin_two_pi_dyadic(std::uint64_t j, unsigned level) {
  const std::uint64_t n = std::uint64_t{1} << level;
  const std::uint64_t q4 = 4 * (j & (n - 1));
  const std::uint64_t quadrant = q4 >> level;
  const std::uint64_t rem = q4 & (n - 1);
  const double x = std::numbers::pi / 2 * std::ldexp(static_cast<double>(rem), -static_cast<int>(level));
  switch (quadrant) {
    case 0: return rem == 0 ? 0.0 : std::sin(x);
    case 1: return rem == 0 ? 1.0 : std::cos(x);
    case 2: return rem == 0 ? 0.0 : -std::sin(x);
    default: return rem == 0 ? -1.0 : -std::cos(x);
  }
}

StepFunction project_to_step(const FourierFunction& f, unsigned level) {
  if (level < 1 || level > kMaxStepLevel) {
    throw std::invalid_argument("projection level must be in [1, " +
                                std::to_string(kMaxStepLevel) + "]");
  }
  const std::size_t cells = std::size_t{1} << level;
  const double scale = static_cast<double>(cells) / (2.0 * std::numbers::pi);
  std::vector<double> c(cells, 0.0);
  const auto a = f.coefficients();
  for (std::size_t i = 0; i < cells; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == 0.0) continue;
      const std::uint64_t m = k + 1;
      const double diff = sin_two_pi_dyadic(m * (i + 1), level) - sin_two_pi_dyadic(m * i, level);
      s += a[k] * diff / static_cast<double>(m);
    }
    c[i] = scale * s;
  }
  return center(StepFunction(level, std::move(c)));
}

StepFunction project_to_step(const StepFunction& phi, unsigned level) {
  if (level < 1 || level > kMaxStepLevel) {
    throw std::invalid_argument("projection level must be in [1, " +
                                std::to_string(kMaxStepLevel) + "]");
  }
  const std::size_t cells = std::size_t{1} << level;
  std::vector<double> c(cells);
  if (level >= phi.level()) {
    const unsigned shift = level - phi.level();
    for (std::size_t i = 0; i < cells; ++i) c[i] = phi[i >> shift];
  } else {
    const std::size_t block = std::size_t{1} << (phi.level() - level);
    for (std::size_t i = 0; i < cells; ++i) {
      c[i] = mean_of(phi.values().subspan(i * block, block));
    }
  }
  return StepFunction(level, std::move(c));
}

double projection_error_l2(const FourierFunction& f, unsigned level) {
  const StepFunction phi = project_to_step(f, level);
  return std::sqrt(std::max(0.0, f.l2_norm_sq() - phi.l2_norm_sq()));
}

}  // namespace kac
