#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "hamdist/rng.hpp"

namespace hamdist {

using u128 = unsigned __int128;

// Largest supported universe; keeps r * x within two machine words.
inline constexpr std::uint64_t kMaxHashUniverse = std::uint64_t{1} << 48;

// The four values f(x) + f(y) - f(x + y) can take for a range of size L.
struct ErrorSet {
  std::array<std::int64_t, 4> elements{};

  static ErrorSet for_range(std::uint64_t range);
  // Same set with every sign flipped: f(x + y) - f(x) - f(y).
  ErrorSet negated() const;
  bool contains(std::int64_t v) const;
};

// f(x) = bits w .. w + l - 1 of r * x, for odd r < 2^(w + l).
struct LinearHash {
  u128 r = 1;
  unsigned w = 0;  // log2 U
  unsigned l = 0;  // log2 L
  std::uint64_t universe = 1;
  std::uint64_t range = 1;

  // No domain check; valid for any x < 2^64.
  std::uint64_t operator()(std::uint64_t x) const {
    return static_cast<std::uint64_t>((r * x) >> w) & (range - 1);
  }
  ErrorSet errors() const { return ErrorSet::for_range(range); }
};

LinearHash sample_linear_hash(std::uint64_t universe, std::uint64_t range, Rng& rng);
// Throws DomainError unless x < U.
std::uint64_t eval_linear(const LinearHash& f, std::uint64_t x);

struct HashedValue {
  std::uint64_t value = 0;  // h(x) in [V]
  std::uint32_t label = 0;  // tau(x) encoded as a1 * q + a2, in [q^2]
};

struct PredictableHash {
  u128 r = 1;
  unsigned w = 0;  // log2 U
  unsigned l = 0;  // log2 V
  unsigned k = 1;  // log2 q
  std::uint64_t universe = 1;
  std::uint64_t range = 1;
  std::uint32_t q = 2;

  std::uint64_t value(std::uint64_t x) const {
    return static_cast<std::uint64_t>((r * x) >> w) & (range - 1);
  }
  HashedValue operator()(std::uint64_t x) const {
    const u128 rx = r * x;
    const auto qm = static_cast<std::uint64_t>(q - 1);
    const auto a1 = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rx >> (w - k)) & qm);
    const auto a2 = static_cast<std::uint32_t>(static_cast<std::uint64_t>(rx >> (w + l - k)) & qm);
    return {static_cast<std::uint64_t>(rx >> w) & (range - 1), a1 * q + a2};
  }
  std::uint32_t label_count() const { return q * q; }
  ErrorSet errors() const { return ErrorSet::for_range(range); }
};

// Throws InvalidParameter unless 2 <= q <= V <= U are powers of two with
// q <= U / 2 and U <= 2^48.
PredictableHash sample_predictable_hash(std::uint64_t universe, std::uint64_t range,
                                        std::uint32_t q, Rng& rng);
HashedValue eval_predictable(const PredictableHash& h, std::uint64_t x);

// h(x) + h(y) - h(x + y) for any x, y with labels alpha, beta, or nullopt
// when either carry is ambiguous (the pair is bad).
std::optional<std::int64_t> phi(const PredictableHash& h, std::uint32_t alpha,
                                 std::uint32_t beta);

}  // namespace hamdist
