#pragma once

// Exact second-order structure of Birkhoff sums of step functions under the
// doubling map, and the dependency-neighbourhood normal approximation bound.
//
// For a level-r step function phi, X_k = phi(T^k alpha) depends on digits
// k+1..k+r only, so X_i and X_j are independent once |i - j| >= r. Every
// expectation below is an exact average over finitely many digit patterns.
//
// All step-function inputs are centered internally: the quantities describe
// X_k - mu.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kac/functions.hpp"

namespace kac {

/// Largest r + k for which covariance() enumerates digit patterns.
inline constexpr unsigned kMaxEnumerationDigits = 26;

struct ExactStats {
  unsigned level = 0;
  /// Var(X_0) = int phi^2 for centered phi.
  double var0 = 0.0;
  double abs_moment3 = 0.0;
  double abs_moment4 = 0.0;
  /// rho[k-1] = Corr(X_0, X_k) for k = 1..r-1.
  std::vector<double> rho;
  /// 2 sum_k rho(k)
  double C3 = 0.0;
  /// lim Var(S_n)/n = (1 + C3) var0
  double sigma_sq_limit = 0.0;
  /// Dependency neighbourhood size bound 2r - 1.
  unsigned D = 0;
};

/// 2^-r sum |c_i - mu|^p for p in {1,2,3,4}; other p throw std::invalid_argument.
double abs_moment(const StepFunction& phi, int p);

/// Cov(X_0, X_k), k >= 1. Exactly zero for k >= r; otherwise an average over
/// all 2^(r+k) digit patterns. Throws when r + k > kMaxEnumerationDigits.
double covariance(const StepFunction& phi, std::uint64_t k);

/// Var(X_0 + ... + X_{n-1}) = n var0 + 2 sum_{k=1}^{min(r-1,n-1)} (n-k) Cov(X_0, X_k).
double sum_variance(const StepFunction& phi, std::uint64_t n);

/// Dependency-neighbourhood bound on d_W((S_n - n mu)/sigma_n, Z):
///   D^2 n m3 / sigma_n^3 + sqrt(28) D^{3/2} / (sqrt(pi) sigma_n^2) sqrt(n m4)
/// with D = 2r - 1 and sigma_n^2 = sum_variance(phi, n).
/// Throws std::domain_error for a degenerate function (sigma_n = 0).
double stein_bound(const StepFunction& phi, std::uint64_t n);

ExactStats compute_exact_stats(const StepFunction& phi);

/// Var(sum_{k<n} f(T^k alpha)) for a cosine series, from cosine orthogonality:
///   n (1/2) sum a_m^2 + 2 sum_{j=1}^{n-1} (n-j) gamma(j),
///   gamma(j) = (1/2) sum_m a_m a_{m 2^j}.
double fourier_sum_variance(const FourierFunction& f, std::uint64_t n);

/// sqrt of the exact Var(S_n) for either kind of function.
double sigma_n(const FunctionSpec& spec, std::uint64_t n);

}  // namespace kac
