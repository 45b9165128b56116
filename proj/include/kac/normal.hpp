#pragma once

// Standard normal distribution helpers.

namespace kac::normal {

/// Density.
double pdf(double x);

/// Phi(x) = erfc(-x / sqrt 2) / 2.
double cdf(double x);

/// 1 - Phi(x), computed without cancellation.
double survival(double x);

/// Phi^-1(p) for p in (0, 1); -inf / +inf at 0 / 1, NaN outside [0, 1].
/// Rational approximation (Acklam) followed by one Newton step on Phi (or on
/// 1 - Phi in the upper half), relative error below 1e-14 over (1e-300, 1 - 1e-16).
double quantile(double p);

/// int_{-inf}^x Phi(t) dt = x Phi(x) + pdf(x) = E[(x - Z)^+].
double cdf_integral(double x);

/// int_x^inf (1 - Phi(t)) dt = pdf(x) - x (1 - Phi(x)) = E[(Z - x)^+].
double survival_integral(double x);

/// int_a^b Phi(t) dt for a <= b, evaluated in the form that avoids
/// cancellation on each side of zero.
double cdf_integral(double a, double b);

}  // namespace kac::normal
