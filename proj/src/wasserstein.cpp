#include "kac/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kac/normal.hpp"

namespace kac {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.empty()) throw std::invalid_argument("samples must be nonempty");
  if (x.size() != y.size()) throw std::invalid_argument("paired samples differ in length");
}

// int_a^b |c - Phi(t)| dt given Phi(a), Phi(b).
double piece(double a, double b, double c, double cdf_a, double cdf_b) {
  const double len = b - a;
  if (cdf_a >= c) return std::max(0.0, normal::cdf_integral(a, b) - c * len);
  if (cdf_b <= c) return std::max(0.0, c * len - normal::cdf_integral(a, b));
  const double x = std::clamp(normal::quantile(c), a, b);
  const double below = c * (x - a) - normal::cdf_integral(a, x);
  const double above = normal::cdf_integral(x, b) - c * (b - x);
  return std::max(0.0, below) + std::max(0.0, above);
}

}  // namespace

std::string_view to_string(W1Method m) {
  return m == W1Method::to_normal_cdf ? "to_normal_cdf" : "paired_sorted";
}

W1Report w1_to_normal(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("samples must be nonempty");
  std::vector<double> x(samples.begin(), samples.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("samples must be finite");
  }
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);

  double total = normal::cdf_integral(x.front()) + normal::survival_integral(x.back());
  double cdf_lo = normal::cdf(x.front());
  for (std::size_t k = 1; k < n; ++k) {
    const double a = x[k - 1];
    const double b = x[k];
    const double cdf_hi = normal::cdf(b);
    if (b > a) total += piece(a, b, static_cast<double>(k) / nd, cdf_lo, cdf_hi);
    cdf_lo = cdf_hi;
  }
  return {total, n, W1Method::to_normal_cdf};
}

W1Report w1_paired(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  return {mean_abs_paired(xs, ys), xs.size(), W1Method::paired_sorted};
}

double mean_abs_paired(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
  return s / static_cast<double>(x.size());
}

double l2_paired(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

}  // namespace kac
