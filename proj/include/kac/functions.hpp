#pragma once

// Observables on [0,1): dyadic step functions and finite cosine series.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kac/bitstream.hpp"

namespace kac {

inline constexpr unsigned kMaxStepLevel = 26;
inline constexpr std::size_t kDefaultMaxTerms = 64;
/// Step functions whose values have variance at or below this are degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Function constant on each [i/2^r, (i+1)/2^r). The index i is the integer
/// whose binary digits are the first r digits of the point.
class StepFunction {
 public:
  StepFunction(unsigned level, std::vector<double> values);

  unsigned level() const { return level_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// 2^-r sum c_i
  double mean() const;
  /// 2^-r sum (c_i - mean)^2
  double variance() const;
  /// 2^-r sum c_i^2
  double l2_norm_sq() const;
  bool is_degenerate() const { return variance() <= kDegeneracyTolerance; }

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  unsigned level_;
  std::vector<double> values_;
};

/// f(t) = sum_{m>=1} a_m cos(2 pi m t) with a declared decay envelope
/// |a_m| < M / m^beta. No constant term, so the mean is zero.
class FourierFunction {
 public:
  /// coefficients[0] is a_1. Throws if the envelope is violated, M <= 0,
  /// beta <= 1/2, the list is empty, or a coefficient is not finite.
  FourierFunction(std::vector<double> coefficients, double decay_M, double decay_beta);

  /// Envelope with the given beta and M = 2 max_m |a_m| m^beta (or 1 for the zero series).
  static FourierFunction with_default_envelope(std::vector<double> coefficients,
                                               double decay_beta = 1.0);

  std::span<const double> coefficients() const { return coefficients_; }
  std::size_t terms() const { return coefficients_.size(); }
  /// a_m, 1-based; zero beyond the stored terms.
  double coefficient(std::uint64_t m) const {
    return m >= 1 && m <= coefficients_.size() ? coefficients_[m - 1] : 0.0;
  }
  double decay_M() const { return decay_M_; }
  double decay_beta() const { return decay_beta_; }

  /// int_0^1 f^2 = (1/2) sum a_m^2
  double l2_norm_sq() const;
  /// sum |a_m|, a bound on sup |f|.
  double abs_sum() const;

  FourierFunction truncated(std::size_t max_terms) const;

  /// Upper bound on the squared L2 norm of the part of any series obeying the
  /// envelope that lies beyond `max_terms`: (1/2) sum_{m > max_terms} (M/m^beta)^2.
  double envelope_tail_l2_sq(std::size_t max_terms) const;

 private:
  std::vector<double> coefficients_;
  double decay_M_;
  double decay_beta_;
};

/// Either kind of function together with its exact mean.
class FunctionSpec {
 public:
  FunctionSpec(StepFunction step);        // NOLINT(google-explicit-constructor)
  FunctionSpec(FourierFunction fourier);  // NOLINT(google-explicit-constructor)

  bool is_step() const { return std::holds_alternative<StepFunction>(fn_); }
  const StepFunction& step() const { return std::get<StepFunction>(fn_); }
  const FourierFunction& fourier() const { return std::get<FourierFunction>(fn_); }
  double mu() const { return mu_; }

  /// Stable identifier of the function (FNV-1a over kind and values), 16 hex digits.
  std::string digest() const;

 private:
  std::variant<StepFunction, FourierFunction> fn_;
  double mu_;
};

/// c_i with i = first r digits of the window. Throws std::invalid_argument
/// ("insufficient digits") when the window is narrower than the level.
double eval_step(const StepFunction& phi, const DyadicWindow& w);

/// sum_m a_m cos(2 pi m t)
double eval_fourier(const FourierFunction& f, double t);

/// sum_m a_m T_m(x), the series at a point whose cos(2 pi t) equals x
/// (Clenshaw recurrence on Chebyshev polynomials).
double eval_fourier_at_cosine(const FourierFunction& f, double x);

StepFunction center(const StepFunction& phi);

double mean(const FunctionSpec& spec);

/// Cell averages c_i = 2^r int_{i/2^r}^{(i+1)/2^r} f, using the exact sine
/// antiderivative, then centered to remove rounding residue.
StepFunction project_to_step(const FourierFunction& f, unsigned level);

/// Conditional expectation of a step function onto dyadic level `level`
/// (block averages when coarsening, repetition when refining).
StepFunction project_to_step(const StepFunction& phi, unsigned level);

/// ||f - project_to_step(f, level)||_L2 via int f^2 - 2^-r sum c_i^2.
double projection_error_l2(const FourierFunction& f, unsigned level);

/// sin(2 pi j / 2^level), exact at multiples of a quarter turn.
double sin_two_pi_dyadic(std::uint64_t j, unsigned level);

}  // namespace kac
