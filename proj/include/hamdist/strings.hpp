#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hamdist/rng.hpp"

namespace hamdist {

using Char = std::uint32_t;

// A text or pattern over the integer alphabet [sigma].
class IntString {
 public:
  IntString() = default;
  // Throws InvalidInstance if some code is >= sigma or sigma == 0.
  IntString(std::vector<Char> chars, std::uint64_t sigma);

  // Byte strings live over the alphabet [256].
  static IntString from_bytes(std::span<const std::uint8_t> bytes);
  // sigma = max code + 1 (at least 1).
  static IntString from_codes(std::vector<Char> chars);

  std::size_t size() const { return chars_.size(); }
  bool empty() const { return chars_.empty(); }
  std::uint64_t sigma() const { return sigma_; }
  Char operator[](std::size_t i) const { return chars_[i]; }
  std::span<const Char> chars() const { return chars_; }

  IntString substr(std::size_t pos, std::size_t len) const;
  // c -> sigma - 1 - c
  IntString reversed_alphabet() const;

  friend bool operator==(const IntString&, const IntString&) = default;

 private:
  std::vector<Char> chars_;
  std::uint64_t sigma_ = 1;
};

// Uniform characters over [sigma].
IntString random_string(std::size_t n, std::uint64_t sigma, Rng& rng);

enum class DistanceKind { hamming, matches, dominance };

// One value per shift i in [0, n - m].
struct DistanceVector {
  std::vector<std::uint64_t> values;
  DistanceKind kind = DistanceKind::hamming;

  std::size_t size() const { return values.size(); }
  std::uint64_t operator[](std::size_t i) const { return values[i]; }
  friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

// Throws InvalidInstance unless 1 <= m <= n and both alphabets agree.
void validate_instance(const IntString& text, const IntString& pattern);

// Direct double loop. Serial on purpose: every faster matcher is checked
// against this.
DistanceVector hamming_oracle(const IntString& text, const IntString& pattern);
// Same loop, shifts split across OpenMP threads.
DistanceVector hamming_oracle_parallel(const IntString& text, const IntString& pattern);

// |{j : P[j] < T[k + j]}| per shift k.
DistanceVector dominance_oracle(const IntString& text, const IntString& pattern);

// matches[i] = m - hamming[i]
DistanceVector to_matches(const DistanceVector& hamming, std::size_t m);

struct CharClass {
  Char code = 0;
  std::vector<std::uint32_t> text_positions;     // A_c
  std::vector<std::uint32_t> pattern_positions;  // B_c
  std::size_t size() const { return text_positions.size() + pattern_positions.size(); }
};

// Per-character position lists, sorted by code. Characters absent from both
// strings do not appear.
struct CharClassIndex {
  std::vector<CharClass> classes;
};

CharClassIndex char_classes(const IntString& text, const IntString& pattern);

struct TextBlock {
  std::size_t offset = 0;       // first shift covered
  std::size_t shift_count = 0;  // shifts offset .. offset + shift_count - 1
  IntString text;               // T[offset .. offset + len)
};

// Blocks of length min(2m - 1, n - offset) at offsets 0, m, 2m, ...; each block
// answers the shifts [offset, offset + m) that fit inside the text.
std::vector<TextBlock> split_blocks(const IntString& text, const IntString& pattern);

// Writes a per-block result vector back into the full shift range.
void scatter_block(const TextBlock& block, std::span<const std::uint64_t> block_values,
                   std::vector<std::uint64_t>& out);

}  // namespace hamdist
