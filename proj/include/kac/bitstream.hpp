#pragma once

// Sample points of [0,1) represented by their binary digits.
//
// A point alpha is the digit sequence e_1, e_2, ... with alpha = sum e_i 2^-i.
// The doubling map alpha -> 2 alpha mod 1 drops the leading digit, so T^k(alpha)
// is read off the stream at offset k and no floating-point orbit is ever
// iterated.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kac {

/// Golden-ratio multiplier of the replicate seed-splitting rule.
inline constexpr std::uint64_t kSeedSplitMultiplier = 0x9E3779B97F4A7C15ULL;

/// Widest window that is still exactly representable as a binary64 value.
inline constexpr unsigned kMaxWindowWidth = 53;

/// Seed of replicate j: master XOR (j * 0x9E3779B97F4A7C15), wrapping.
constexpr std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t j) {
  return master ^ (j * kSeedSplitMultiplier);
}

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Word w of the digit stream for `seed`. Counter based: a pure function of
/// (seed, w), equal to the (w+1)-th output of SplitMix64 started at mix64(seed).
constexpr std::uint64_t digit_word(std::uint64_t seed, std::uint64_t w) {
  return mix64(mix64(seed) + (w + 1) * kSeedSplitMultiplier);
}

/// Fills `words` with words 0..size-1 of the stream for `seed`.
void fill_digit_words(std::uint64_t seed, std::span<std::uint64_t> words);

/// T^offset of the sample point, truncated to `width` digits.
struct DyadicWindow {
  std::size_t offset = 0;
  unsigned width = 0;
  /// Digits offset+1 .. offset+width, first digit most significant.
  std::uint64_t digits = 0;
  /// digits * 2^-width, in [0, 1).
  double value = 0.0;
};

/// Immutable packed digit sequence. Digit 1 is the MSB of word 0.
class DigitStream {
 public:
  /// `count` digits of the stream for `seed`; count >= 1.
  static DigitStream generate(std::uint64_t seed, std::size_t count);

  /// Stream holding exactly the given digits (each 0 or 1). Seed is 0.
  static DigitStream from_digits(std::span<const int> digits);

  std::uint64_t seed() const { return seed_; }
  std::size_t length() const { return length_; }
  std::span<const std::uint64_t> words() const { return words_; }

  /// Digit i, 1-based.
  int digit(std::size_t i) const;

  /// Digits offset+1 .. offset+width as an integer; 1 <= width <= 64.
  /// Throws std::out_of_range("insufficient bits") when past the end.
  std::uint64_t digits(std::size_t offset, unsigned width) const;

  /// The stream re-indexed by n: digit i of the result is digit i+n of this.
  DigitStream shifted(std::size_t n) const;

 private:
  DigitStream(std::uint64_t seed, std::size_t length, std::vector<std::uint64_t> words)
      : seed_(seed), length_(length), words_(std::move(words)) {}

  std::uint64_t seed_ = 0;
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Digits offset+1 .. offset+width of `stream` as a dyadic value.
/// 1 <= width <= kMaxWindowWidth.
DyadicWindow window(const DigitStream& stream, std::size_t offset,
                    unsigned width = kMaxWindowWidth);

/// Extracts `width` (<= 64) digits starting after `offset` from packed words.
/// No bounds checking; the caller guarantees offset + width <= 64 * words.size().
inline std::uint64_t extract_digits(std::span<const std::uint64_t> words, std::size_t offset,
                                    unsigned width) {
  const std::size_t w = offset / 64;
  const unsigned s = static_cast<unsigned>(offset % 64);
  std::uint64_t hi = words[w] << s;
  if (s != 0 && s + width > 64) hi |= words[w + 1] >> (64 - s);
  return width == 64 ? hi : hi >> (64 - width);
}

}  // namespace kac
