#include "kac/exact_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kac {

namespace {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double abs_moment(const StepFunction& phi, int p) {
  if (p < 1 || p > 4) throw std::invalid_argument("moment order must be 1, 2, 3 or 4");
  const double mu = phi.mean();
  CompensatedSum s;
  for (double v : phi.values()) {
    const double a = std::abs(v - mu);
    double t = a;
    for (int i = 1; i < p; ++i) t *= a;
    s.add(t);
  }
  return s.value() / static_cast<double>(phi.size());
}

double covariance(const StepFunction& phi, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("lag must be positive");
  const unsigned r = phi.level();
  if (k >= r) return 0.0;
  if (r + k > kMaxEnumerationDigits) {
    throw std::invalid_argument("covariance enumeration limited to r + k <= " +
                                std::to_string(kMaxEnumerationDigits));
  }
  const StepFunction c = center(phi);
  const std::uint64_t patterns = std::uint64_t{1} << (r + k);
  const std::uint64_t mask = (std::uint64_t{1} << r) - 1;
  CompensatedSum s;
  // Pattern bits, most significant first, are digits 1..r+k. X_0 reads
  // digits 1..r (the top r bits), X_k reads digits k+1..k+r (the low r bits).
  for (std::uint64_t p = 0; p < patterns; ++p) {
    s.add(c[static_cast<std::size_t>(p >> k)] * c[static_cast<std::size_t>(p & mask)]);
  }
  return std::ldexp(s.value(), -static_cast<int>(r + k));
}

double sum_variance(const StepFunction& phi, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("horizon n must be positive");
  const double nd = static_cast<double>(n);
  double total = nd * abs_moment(phi, 2);
  const std::uint64_t kmax = std::min<std::uint64_t>(phi.level() - 1, n - 1);
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    total += 2.0 * static_cast<double>(n - k) * covariance(phi, k);
  }
  return total;
}

double stein_bound(const StepFunction& phi, std::uint64_t n) {
  const double var = sum_variance(phi, n);
  if (!(var > 0.0)) throw std::domain_error("degenerate function: zero variance");
  const double D = 2.0 * phi.level() - 1.0;
  const double nd = static_cast<double>(n);
  const double m3 = abs_moment(phi, 3);
  const double m4 = abs_moment(phi, 4);
  const double sigma = std::sqrt(var);
  const double first = D * D * nd * m3 / (var * sigma);
  const double second = std::sqrt(28.0) * D * std::sqrt(D) /
                        (std::sqrt(std::numbers::pi) * var) * std::sqrt(nd * m4);
  return first + second;
}

ExactStats compute_exact_stats(const StepFunction& phi) {
  ExactStats s;
  s.level = phi.level();
  s.var0 = abs_moment(phi, 2);
  s.abs_moment3 = abs_moment(phi, 3);
  s.abs_moment4 = abs_moment(phi, 4);
  s.D = 2 * phi.level() - 1;
  if (!(s.var0 > 0.0)) throw std::domain_error("degenerate function: zero variance");
  for (unsigned k = 1; k < phi.level(); ++k) {
    s.rho.push_back(covariance(phi, k) / s.var0);
    s.C3 += 2.0 * s.rho.back();
  }
  s.sigma_sq_limit = (1.0 + s.C3) * s.var0;
  return s;
}

double fourier_sum_variance(const FourierFunction& f, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("horizon n must be positive");
  const double nd = static_cast<double>(n);
  double total = nd * f.l2_norm_sq();
  const std::uint64_t terms = f.terms();
  // gamma(j) vanishes once 2^j exceeds the number of stored terms.
  for (std::uint64_t j = 1; j < n && j < 64 && (std::uint64_t{1} << j) <= terms; ++j) {
    double gamma = 0.0;
    for (std::uint64_t m = 1; (m << j) <= terms; ++m) {
      gamma += f.coefficient(m) * f.coefficient(m << j);
    }
    total += 2.0 * static_cast<double>(n - j) * 0.5 * gamma;
  }
  return total;
}

double sigma_n(const FunctionSpec& spec, std::uint64_t n) {
  const double var = spec.is_step() ? sum_variance(spec.step(), n)
                                    : fourier_sum_variance(spec.fourier(), n);
  return std::sqrt(std::max(0.0, var));
}

}  // namespace kac
