#include "kac/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace kac::normal {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Acklam's rational approximation, relative error about 1.15e-9.
double acklam(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Phi^-1(p) for p <= 1/2.
double lower_quantile(double p) {
  double x = acklam(p);
  const double density = pdf(x);
  if (density > 0.0) {
    const double err = cdf(x) - p;
    x -= err / density;
  }
  return x;
}

}  // namespace

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double survival(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double quantile(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) return std::numeric_limits<double>::quiet_NaN();
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (p == 0.5) return 0.0;
  if (p < 0.5) return lower_quantile(p);
  return -lower_quantile(1.0 - p);
}

double cdf_integral(double x) {
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x > 0.0) return x + survival_integral(x);
  return x * cdf(x) + pdf(x);
}

double survival_integral(double x) {
  if (x == std::numeric_limits<double>::infinity()) return 0.0;
  if (x < 0.0) return cdf_integral(-x);
  return pdf(x) - x * survival(x);
}

double cdf_integral(double a, double b) {
  if (b <= 0.0) return cdf_integral(b) - cdf_integral(a);
  if (a >= 0.0) return (b - a) - (survival_integral(a) - survival_integral(b));
  return cdf_integral(a, 0.0) + cdf_integral(0.0, b);
}

}  // namespace kac::normal
