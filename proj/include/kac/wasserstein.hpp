#pragma once

// Wasserstein-1 distances in one dimension.

#include <cstddef>
#include <span>
#include <string_view>

namespace kac {

enum class W1Method { to_normal_cdf, paired_sorted };

std::string_view to_string(W1Method m);

struct W1Report {
  double distance = 0.0;
  std::size_t N = 0;
  W1Method method = W1Method::to_normal_cdf;
};

/// d_W between the empirical law of `samples` and N(0,1), as the exact
/// integral of |F_N - Phi|. Between consecutive order statistics F_N is the
/// constant k/N, and each piece is integrated in closed form through the
/// antiderivatives of Phi, split at the crossing Phi^-1(k/N) when there is one.
/// Throws std::invalid_argument on empty input or non-finite values.
W1Report w1_to_normal(std::span<const double> samples);

/// Exact d_W between two empirical measures of equal size:
/// (1/N) sum |x_(i) - y_(i)| over the sorted samples.
W1Report w1_paired(std::span<const double> x, std::span<const double> y);

/// (1/N) sum |x_i - y_i| in the given (coupled) order.
double mean_abs_paired(std::span<const double> x, std::span<const double> y);

/// sqrt((1/N) sum (x_i - y_i)^2) in the given (coupled) order.
double l2_paired(std::span<const double> x, std::span<const double> y);

}  // namespace kac
