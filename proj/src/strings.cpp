#include "hamdist/strings.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {

IntString::IntString(std::vector<Char> chars, std::uint64_t sigma)
    : chars_(std::move(chars)), sigma_(sigma) {
  if (sigma_ == 0) throw InvalidInstance("alphabet size must be positive");
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    if (chars_[i] >= sigma_)
      throw InvalidInstance("character code " + std::to_string(chars_[i]) + " at position " +
                            std::to_string(i) + " is outside [0, " + std::to_string(sigma_) +
                            ")");
  }
}

IntString IntString::from_bytes(std::span<const std::uint8_t> bytes) {
  return IntString(std::vector<Char>(bytes.begin(), bytes.end()), 256);
}

IntString IntString::from_codes(std::vector<Char> chars) {
  Char top = 0;
  for (Char c : chars) top = std::max(top, c);
  const std::uint64_t sigma = static_cast<std::uint64_t>(top) + 1;
  return IntString(std::move(chars), sigma);
}

IntString IntString::substr(std::size_t pos, std::size_t len) const {
  IntString out;
  out.sigma_ = sigma_;
  const auto first = chars_.begin() + static_cast<std::ptrdiff_t>(std::min(pos, chars_.size()));
  const auto last = chars_.begin() + static_cast<std::ptrdiff_t>(std::min(pos + len, chars_.size()));
  out.chars_.assign(first, last);
  return out;
}

IntString IntString::reversed_alphabet() const {
  IntString out;
  out.sigma_ = sigma_;
  out.chars_.resize(chars_.size());
  std::transform(chars_.begin(), chars_.end(), out.chars_.begin(),
                 [this](Char c) { return static_cast<Char>(sigma_ - 1 - c); });
  return out;
}

IntString random_string(std::size_t n, std::uint64_t sigma, Rng& rng) {
  if (sigma == 0) throw InvalidParameter("alphabet size must be positive");
  std::uniform_int_distribution<std::uint64_t> pick(0, sigma - 1);
  std::vector<Char> chars(n);
  for (auto& c : chars) c = static_cast<Char>(pick(rng));
  return IntString(std::move(chars), sigma);
}

void validate_instance(const IntString& text, const IntString& pattern) {
  if (pattern.empty()) throw InvalidInstance("pattern is empty");
  if (text.empty()) throw InvalidInstance("text is empty");
  if (pattern.size() > text.size())
    throw InvalidInstance("pattern length " + std::to_string(pattern.size()) +
                          " exceeds text length " + std::to_string(text.size()));
  if (text.size() > (std::size_t{1} << 31))
    throw InvalidInstance("text longer than 2^31 characters");
}

DistanceVector hamming_oracle(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  DistanceVector out{std::vector<std::uint64_t>(n - m + 1, 0), DistanceKind::hamming};
  for (std::size_t i = 0; i + m <= n; ++i) {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < m; ++j) d += pattern[j] != text[i + j];
    out.values[i] = d;
  }
  return out;
}

DistanceVector hamming_oracle_parallel(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  const auto t = text.chars();
  const auto p = pattern.chars();
  std::vector<std::uint64_t> values(n - m + 1, 0);
  const auto shifts = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < shifts; ++i) {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < m; ++j) d += p[j] != t[static_cast<std::size_t>(i) + j];
    values[static_cast<std::size_t>(i)] = d;
  }
  return {std::move(values), DistanceKind::hamming};
}

DistanceVector dominance_oracle(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  DistanceVector out{std::vector<std::uint64_t>(n - m + 1, 0), DistanceKind::dominance};
  for (std::size_t k = 0; k + m <= n; ++k) {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < m; ++j) d += pattern[j] < text[k + j];
    out.values[k] = d;
  }
  return out;
}

DistanceVector to_matches(const DistanceVector& hamming, std::size_t m) {
  DistanceVector out{hamming.values, DistanceKind::matches};
  for (auto& v : out.values) v = m - v;
  return out;
}

CharClassIndex char_classes(const IntString& text, const IntString& pattern) {
  // (code, source, position) triples sorted by code; source 0 = text.
  struct Entry {
    Char code;
    std::uint32_t source;
    std::uint32_t pos;
  };
  std::vector<Entry> entries;
  entries.reserve(text.size() + pattern.size());
  for (std::size_t a = 0; a < text.size(); ++a)
    entries.push_back({text[a], 0, static_cast<std::uint32_t>(a)});
  for (std::size_t b = 0; b < pattern.size(); ++b)
    entries.push_back({pattern[b], 1, static_cast<std::uint32_t>(b)});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.code < y.code; });

  CharClassIndex index;
  for (const Entry& e : entries) {
    if (index.classes.empty() || index.classes.back().code != e.code)
      index.classes.push_back(CharClass{e.code, {}, {}});
    auto& cls = index.classes.back();
    (e.source == 0 ? cls.text_positions : cls.pattern_positions).push_back(e.pos);
  }
  return index;
}

std::vector<TextBlock> split_blocks(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  const std::size_t shifts = n - m + 1;
  std::vector<TextBlock> blocks;
  for (std::size_t offset = 0; offset < shifts; offset += m) {
    const std::size_t len = std::min(2 * m - 1, n - offset);
    blocks.push_back(TextBlock{offset, len - m + 1, text.substr(offset, len)});
  }
  return blocks;
}

void scatter_block(const TextBlock& block, std::span<const std::uint64_t> block_values,
                   std::vector<std::uint64_t>& out) {
  std::copy_n(block_values.begin(), block.shift_count,
              out.begin() + static_cast<std::ptrdiff_t>(block.offset));
}

}  // namespace hamdist
