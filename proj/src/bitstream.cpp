#include "kac/bitstream.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kac {

namespace {

std::size_t words_for(std::size_t count) { return (count + 63) / 64; }

}  // namespace

void fill_digit_words(std::uint64_t seed, std::span<std::uint64_t> words) {
  const std::uint64_t base = mix64(seed);
  for (std::size_t w = 0; w < words.size(); ++w) {
    words[w] = mix64(base + (w + 1) * kSeedSplitMultiplier);
  }
}

DigitStream DigitStream::generate(std::uint64_t seed, std::size_t count) {
  if (count == 0) throw std::invalid_argument("digit count must be positive");
  std::vector<std::uint64_t> words(words_for(count));
  fill_digit_words(seed, words);
  // Digits past `count` are cleared so that equal streams compare equal word-wise.
  if (const unsigned tail = count % 64; tail != 0) words.back() &= ~0ULL << (64 - tail);
  return DigitStream(seed, count, std::move(words));
}

DigitStream DigitStream::from_digits(std::span<const int> digits) {
  if (digits.empty()) throw std::invalid_argument("digit count must be positive");
  std::vector<std::uint64_t> words(words_for(digits.size()), 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0 && digits[i] != 1) throw std::invalid_argument("digits must be 0 or 1");
    if (digits[i]) words[i / 64] |= 1ULL << (63 - i % 64);
  }
  return DigitStream(0, digits.size(), std::move(words));
}

int DigitStream::digit(std::size_t i) const {
  if (i == 0 || i > length_) throw std::out_of_range("insufficient bits");
  const std::size_t z = i - 1;
  return static_cast<int>((words_[z / 64] >> (63 - z % 64)) & 1U);
}

std::uint64_t DigitStream::digits(std::size_t offset, unsigned width) const {
  if (width == 0 || width > 64) throw std::invalid_argument("window width must be in [1, 64]");
  if (offset > length_ || width > length_ - offset) throw std::out_of_range("insufficient bits");
  return extract_digits(words_, offset, width);
}

DigitStream DigitStream::shifted(std::size_t n) const {
  if (n >= length_) throw std::out_of_range("insufficient bits");
  const std::size_t count = length_ - n;
  std::vector<std::uint64_t> words(words_for(count));
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t from = n + 64 * w;
    const unsigned width = static_cast<unsigned>(std::min<std::size_t>(64, length_ - from));
    words[w] = extract_digits(words_, from, width) << (64 - width);
  }
  return DigitStream(seed_, count, std::move(words));
}

DyadicWindow window(const DigitStream& stream, std::size_t offset, unsigned width) {
  if (width == 0 || width > kMaxWindowWidth) {
    throw std::invalid_argument("window width must be in [1, 53]");
  }
  DyadicWindow out;
  out.offset = offset;
  out.width = width;
  out.digits = stream.digits(offset, width);
  out.value = std::ldexp(static_cast<double>(out.digits), -static_cast<int>(width));
  return out;
}

}  // namespace kac
