#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kac/bitstream.hpp"
#include "kac/functions.hpp"

using kac::FourierFunction;
using kac::StepFunction;

namespace {

constexpr double kPi = std::numbers::pi;

kac::DyadicWindow window_of(std::vector<int> digits, unsigned width) {
  return kac::window(kac::DigitStream::from_digits(digits), 0, width);
}

// Composite Simpson rule; test-side oracle for cell averages.
template <class F>
double simpson(F f, double a, double b, int panels = 2000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

FourierFunction random_series(std::mt19937_64& rng, std::size_t terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(terms);
  for (std::size_t m = 0; m < terms; ++m) a[m] = u(rng) / static_cast<double>(m + 1);
  return FourierFunction::with_default_envelope(a, 1.0);
}

}  // namespace

TEST_CASE("eval_step examples") {
  const StepFunction rad(1, {1, -1});
  CHECK(kac::eval_step(rad, window_of({0, 1, 1}, 3)) == 1);
  const StepFunction lin(2, {3, 1, -1, -3});
  CHECK(kac::eval_step(lin, window_of({1, 0, 1}, 3)) == -1);
  CHECK_THROWS_WITH_AS(kac::eval_step(lin, window_of({1, 0, 1}, 1)), "insufficient digits",
                       std::invalid_argument);
}

TEST_CASE("eval_step agrees with interval lookup on random windows") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (unsigned r = 1; r <= 6; ++r) {
    std::vector<double> v(std::size_t{1} << r);
    for (double& x : v) x = u(rng);
    const StepFunction phi(r, v);
    const auto s = kac::DigitStream::generate(r, 10'000 + 53);
    for (std::size_t k = 0; k < 10'000; ++k) {
      const auto w = kac::window(s, k, 53);
      const auto cell = static_cast<std::size_t>(std::floor(std::ldexp(w.value, static_cast<int>(r))));
      REQUIRE(kac::eval_step(phi, w) == v[cell]);
    }
  }
}

TEST_CASE("eval_step reads only the first r digits") {
  for (unsigned r = 1; r <= 4; ++r) {
    std::vector<double> v(std::size_t{1} << r);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i * i) - 3.0;
    const StepFunction phi(r, v);
    for (unsigned B = r; B <= 8; ++B) {
      for (std::uint64_t pattern = 0; pattern < (1ULL << B); ++pattern) {
        std::vector<int> d(B);
        for (unsigned i = 0; i < B; ++i) d[i] = static_cast<int>((pattern >> (B - 1 - i)) & 1);
        REQUIRE(kac::eval_step(phi, window_of(d, B)) == v[pattern >> (B - r)]);
      }
    }
  }
}

TEST_CASE("step function construction") {
  CHECK_THROWS_AS(StepFunction(2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(StepFunction(1, {1, NAN}), std::invalid_argument);
  CHECK(StepFunction(1, {2, 2}).is_degenerate());
  CHECK_FALSE(StepFunction(1, {2, 0}).is_degenerate());
}

TEST_CASE("eval_fourier examples") {
  const auto f = FourierFunction::with_default_envelope({1.0});
  CHECK(kac::eval_fourier(f, 0.0) == 1.0);
  CHECK(std::abs(kac::eval_fourier(f, 0.25)) <= 1e-15);
  const auto g = FourierFunction::with_default_envelope({1.0, 0.5});
  CHECK(kac::eval_fourier(g, 0.5) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("eval_fourier matches the direct cosine sum and its sup bound") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_series(rng, 64);
    for (int i = 0; i < 200; ++i) {
      const double t = u(rng);
      double direct = 0.0;
      for (std::size_t m = 1; m <= f.terms(); ++m) {
        direct += f.coefficient(m) * std::cos(2 * kPi * static_cast<double>(m) * t);
      }
      const double v = kac::eval_fourier(f, t);
      REQUIRE(v == doctest::Approx(direct).epsilon(1e-12));
      REQUIRE(std::abs(v) <= f.abs_sum() + 1e-12);
    }
  }
}

TEST_CASE("fourier envelope validation") {
  CHECK_NOTHROW(FourierFunction({1.0, 0.4}, 1.01, 1.0));
  CHECK_THROWS_AS(FourierFunction({1.0, 0.6}, 1.01, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FourierFunction({1.0}, 1.0, 1.0), std::invalid_argument);  // strict
  CHECK_THROWS_AS(FourierFunction({0.1}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FourierFunction({0.1}, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(FourierFunction({}, 1.0, 1.0), std::invalid_argument);
  const auto f = FourierFunction::with_default_envelope({0.0, 0.0});
  CHECK(f.decay_M() == 1.0);
}

TEST_CASE("envelope tail bound") {
  const FourierFunction f({0.5}, 1.0, 1.0);
  double head = 0.0;
  for (int m = 1; m <= 64; ++m) head += 1.0 / (m * m);
  const double exact = 0.5 * (kPi * kPi / 6.0 - head);
  const double bound = f.envelope_tail_l2_sq(64);
  CHECK(bound >= exact);
  CHECK(bound == doctest::Approx(exact).epsilon(1e-4));
  CHECK(f.truncated(1).terms() == 1);
}

TEST_CASE("center and mean") {
  CHECK(kac::center(StepFunction(1, {1, -1})) == StepFunction(1, {1, -1}));
  CHECK(kac::center(StepFunction(1, {2, 0})) == StepFunction(1, {1, -1}));
  const auto c = kac::center(StepFunction(2, {3, 1, -1, -3}));
  CHECK(c == StepFunction(2, {3, 1, -1, -3}));
  CHECK(c.mean() == 0.0);
  CHECK(kac::mean(kac::FunctionSpec(StepFunction(1, {1, -1}))) == 0.0);
  CHECK(kac::mean(kac::FunctionSpec(StepFunction(1, {2, 0}))) == 1.0);
  CHECK(kac::mean(kac::FunctionSpec(FourierFunction::with_default_envelope({1.0}))) == 0.0);
}

TEST_CASE("projection of cos(2 pi t)") {
  const auto f = FourierFunction::with_default_envelope({1.0});
  const auto p2 = kac::project_to_step(f, 2);
  const double c = 2.0 / kPi;
  const double expected[] = {c, -c, -c, c};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(p2[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    const double avg = 4.0 * simpson([](double t) { return std::cos(2 * kPi * t); }, i / 4.0,
                                     (i + 1) / 4.0);
    CHECK(p2[i] == doctest::Approx(avg).epsilon(1e-10));
  }
  const auto p1 = kac::project_to_step(f, 1);
  CHECK(std::abs(p1[0]) <= 1e-15);
  CHECK(std::abs(p1[1]) <= 1e-15);
  CHECK(p1.is_degenerate());
}

TEST_CASE("projection matches quadrature cell averages for random series") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_series(rng, 8);
    const unsigned r = 3;
    const auto p = kac::project_to_step(f, r);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double lo = std::ldexp(static_cast<double>(i), -3);
      const double hi = std::ldexp(static_cast<double>(i + 1), -3);
      const double avg = 8.0 * simpson(
          [&](double t) {
            double s = 0.0;
            for (std::size_t m = 1; m <= f.terms(); ++m) {
              s += f.coefficient(m) * std::cos(2 * kPi * static_cast<double>(m) * t);
            }
            return s;
          },
          lo, hi);
      CHECK(p[i] == doctest::Approx(avg).epsilon(1e-9));
    }
  }
}

TEST_CASE("projection properties") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_series(rng, 32);
    double prev_err = INFINITY;
    for (unsigned r = 1; r <= 10; ++r) {
      const auto p = kac::project_to_step(f, r);
      // Idempotent at fixed level.
      const auto again = kac::project_to_step(p, r);
      for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(again[i] == p[i]);
      // Tower property: coarsening the level r+1 projection gives the level r one.
      const auto coarse = kac::project_to_step(kac::project_to_step(f, r + 1), r);
      for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(coarse[i] == doctest::Approx(p[i]).epsilon(1e-12));
      // L2 contraction and monotone error.
      REQUIRE(p.l2_norm_sq() <= f.l2_norm_sq() + 1e-14);
      const double err = kac::projection_error_l2(f, r);
      REQUIRE(err <= prev_err + 1e-12);
      prev_err = err;
      REQUIRE(std::abs(p.mean()) <= 1e-14);
    }
  }
}

TEST_CASE("refining a step function repeats its values") {
  const StepFunction phi(1, {2, -1});
  const auto fine = kac::project_to_step(phi, 3);
  const std::vector<double> expected = {2, 2, 2, 2, -1, -1, -1, -1};
  CHECK(std::vector<double>(fine.values().begin(), fine.values().end()) == expected);
  CHECK(kac::project_to_step(fine, 1) == phi);
}

TEST_CASE("dyadic sine is exact at quarter turns") {
  CHECK(kac::sin_two_pi_dyadic(0, 3) == 0.0);
  CHECK(kac::sin_two_pi_dyadic(2, 3) == 1.0);
  CHECK(kac::sin_two_pi_dyadic(4, 3) == 0.0);
  CHECK(kac::sin_two_pi_dyadic(6, 3) == -1.0);
  CHECK(kac::sin_two_pi_dyadic(8 + 6, 3) == -1.0);
  for (std::uint64_t j = 0; j < 64; ++j) {
    CHECK(kac::sin_two_pi_dyadic(j, 6) == doctest::Approx(std::sin(2 * kPi * j / 64.0)).epsilon(1e-15));
  }
}

TEST_CASE("function digest") {
  const kac::FunctionSpec a(StepFunction(1, {1, -1}));
  const kac::FunctionSpec b(StepFunction(1, {1, -1}));
  const kac::FunctionSpec c(StepFunction(1, {-1, 1}));
  const kac::FunctionSpec d(FourierFunction::with_default_envelope({1.0}));
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() != c.digest());
  CHECK(a.digest() != d.digest());
  CHECK(a.digest().size() == 16);
}
