#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kac/bitstream.hpp"

using kac::DigitStream;

namespace {

std::vector<int> all_digits(const DigitStream& s) {
  std::vector<int> out;
  for (std::size_t i = 1; i <= s.length(); ++i) out.push_back(s.digit(i));
  return out;
}

}  // namespace

TEST_CASE("generation is deterministic and prefix stable") {
  const auto a = DigitStream::generate(42, 10);
  const auto b = DigitStream::generate(42, 10);
  const auto c = DigitStream::generate(42, 20);
  CHECK(all_digits(a) == all_digits(b));
  for (std::size_t i = 1; i <= 10; ++i) CHECK(a.digit(i) == c.digit(i));
  CHECK(all_digits(a) != all_digits(DigitStream::generate(43, 10)));
  CHECK_THROWS_AS(DigitStream::generate(1, 0), std::invalid_argument);
}

TEST_CASE("digits are fair across a seed sweep") {
  // 10^6 digits: binomial sd is 5e-4, so [0.498, 0.502] is a 4 sd band.
  std::uint64_t ones = 0;
  std::uint64_t total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = DigitStream::generate(seed, 1000);
    for (std::size_t i = 1; i <= s.length(); ++i) ones += static_cast<std::uint64_t>(s.digit(i));
    total += s.length();
  }
  const double mean = static_cast<double>(ones) / static_cast<double>(total);
  CHECK(mean >= 0.498);
  CHECK(mean <= 0.502);
}

TEST_CASE("window values") {
  const std::vector<int> d1 = {1, 0, 1, 0, 0};
  CHECK(kac::window(DigitStream::from_digits(d1), 0, 3).value == 0.625);
  const std::vector<int> d2 = {1, 0, 1, 1, 0};
  const auto w = kac::window(DigitStream::from_digits(d2), 1, 3);
  CHECK(w.value == 0.375);
  CHECK(w.digits == 3);
  CHECK(w.offset == 1);
  CHECK(w.width == 3);
}

TEST_CASE("window errors") {
  const auto s = DigitStream::generate(3, 10);
  CHECK_THROWS_WITH_AS(kac::window(s, 8, 3), "insufficient bits", std::out_of_range);
  CHECK_NOTHROW(kac::window(s, 7, 3));
  CHECK_THROWS_AS(kac::window(s, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(kac::window(DigitStream::generate(3, 100), 0, 54), std::invalid_argument);
  CHECK_THROWS_AS(s.digit(0), std::out_of_range);
  CHECK_THROWS_AS(s.digit(11), std::out_of_range);
  const std::vector<int> bad = {0, 2};
  CHECK_THROWS_AS(DigitStream::from_digits(bad), std::invalid_argument);
}

TEST_CASE("digit-shift identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = DigitStream::generate(seed, 40);
    for (std::size_t n = 0; n <= 8; ++n) {
      const auto view = s.shifted(n);
      for (std::size_t k = 0; k <= 8; ++k) {
        for (unsigned B = 1; B <= 16; ++B) {
          CHECK(kac::window(s, k + n, B).value == kac::window(view, k, B).value);
        }
      }
    }
  }
}

TEST_CASE("packed extraction matches digit-by-digit reconstruction") {
  const auto s = DigitStream::generate(99, 400);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const unsigned width = 1 + static_cast<unsigned>(rng() % 64);
    const std::size_t offset = rng() % (400 - width + 1);
    std::uint64_t expected = 0;
    for (unsigned i = 1; i <= width; ++i) expected = (expected << 1) | static_cast<unsigned>(s.digit(offset + i));
    REQUIRE(s.digits(offset, width) == expected);
  }
  const auto t = s.shifted(77);
  CHECK(t.length() == 323);
  for (std::size_t i = 1; i <= t.length(); ++i) REQUIRE(t.digit(i) == s.digit(i + 77));
}

TEST_CASE("window approximates T^k of an exact rational point") {
  // alpha = a/q with q odd: digits by long division, frac(2^k alpha) = (a 2^k mod q)/q.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t q = 2 * (rng() % 1'000'000) + 3;
    const std::uint64_t a = rng() % q;
    std::vector<int> digits;
    std::uint64_t rem = a;
    for (int i = 0; i < 200; ++i) {
      rem *= 2;
      digits.push_back(rem >= q ? 1 : 0);
      if (rem >= q) rem -= q;
    }
    const auto s = DigitStream::from_digits(digits);
    std::uint64_t orbit = a;
    for (std::size_t k = 0; k < 100; ++k) {
      const double exact = static_cast<double>(orbit) / static_cast<double>(q);
      for (unsigned B : {8U, 20U, 40U, 53U}) {
        const auto w = kac::window(s, k, B);
        REQUIRE(w.value >= 0.0);
        REQUIRE(w.value < 1.0);
        // The true value lies in [w, w + 2^-B); one extra ulp covers rounding of `exact`.
        REQUIRE(std::abs(w.value - exact) <= std::ldexp(1.0, -static_cast<int>(B)) + 1e-16);
      }
      orbit = (2 * orbit) % q;
    }
  }
}

TEST_CASE("replicate seed rule") {
  CHECK(kac::replicate_seed(123, 0) == 123);
  CHECK(kac::replicate_seed(0, 1) == 0x9E3779B97F4A7C15ULL);
  CHECK(kac::replicate_seed(0xFFULL, 2) == (0xFFULL ^ (2 * 0x9E3779B97F4A7C15ULL)));
  // Counter-based words: word w depends only on (seed, w).
  std::vector<std::uint64_t> words(5);
  kac::fill_digit_words(77, words);
  for (std::uint64_t w = 0; w < 5; ++w) CHECK(words[w] == kac::digit_word(77, w));
  const auto s = DigitStream::generate(77, 320);
  for (std::size_t w = 0; w < 5; ++w) CHECK(s.words()[w] == words[w]);
}
