#include "hamdist/hashing.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

void require_pow2(std::uint64_t v, const char* name) {
  if (v == 0 || !std::has_single_bit(v))
    throw InvalidParameter(std::string(name) + " must be a power of two, got " +
                           std::to_string(v));
}

u128 sample_odd_multiplier(unsigned bits, Rng& rng) {
  u128 r = (static_cast<u128>(rng()) << 64) | rng();
  if (bits < 128) r &= (static_cast<u128>(1) << bits) - 1;
  return r | 1;
}

}  // namespace

ErrorSet ErrorSet::for_range(std::uint64_t range) {
  const auto v = static_cast<std::int64_t>(range);
  return ErrorSet{{0, -1, v, v - 1}};
}

ErrorSet ErrorSet::negated() const {
  ErrorSet out = *this;
  for (auto& e : out.elements) e = -e;
  return out;
}

bool ErrorSet::contains(std::int64_t v) const {
  return std::find(elements.begin(), elements.end(), v) != elements.end();
}

LinearHash sample_linear_hash(std::uint64_t universe, std::uint64_t range, Rng& rng) {
  require_pow2(universe, "U");
  require_pow2(range, "L");
  if (range > universe) throw InvalidParameter("hash range exceeds universe");
  if (universe > kMaxHashUniverse) throw InvalidParameter("universe above 2^48");
  LinearHash f;
  f.w = static_cast<unsigned>(std::countr_zero(universe));
  f.l = static_cast<unsigned>(std::countr_zero(range));
  f.universe = universe;
  f.range = range;
  f.r = sample_odd_multiplier(f.w + f.l, rng);
  return f;
}

std::uint64_t eval_linear(const LinearHash& f, std::uint64_t x) {
  if (x >= f.universe)
    throw DomainError(std::to_string(x) + " outside hash domain [0, " +
                      std::to_string(f.universe) + ")");
  return f(x);
}

PredictableHash sample_predictable_hash(std::uint64_t universe, std::uint64_t range,
                                        std::uint32_t q, Rng& rng) {
  require_pow2(universe, "U");
  require_pow2(range, "V");
  require_pow2(q, "q");
  if (q < 2 || q > range || range > universe)
    throw InvalidParameter("need 2 <= q <= V <= U");
  if (2 * std::uint64_t{q} > universe) throw InvalidParameter("need q <= U / 2");
  if (universe > kMaxHashUniverse) throw InvalidParameter("universe above 2^48");
  PredictableHash h;
  h.w = static_cast<unsigned>(std::countr_zero(universe));
  h.l = static_cast<unsigned>(std::countr_zero(range));
  h.k = static_cast<unsigned>(std::countr_zero(q));
  h.universe = universe;
  h.range = range;
  h.q = q;
  h.r = sample_odd_multiplier(h.w + h.l, rng);
  return h;
}

HashedValue eval_predictable(const PredictableHash& h, std::uint64_t x) {
  if (x >= h.universe)
    throw DomainError(std::to_string(x) + " outside hash domain [0, " +
                      std::to_string(h.universe) + ")");
  return h(x);
}

std::optional<std::int64_t> phi(const PredictableHash& h, std::uint32_t alpha,
                                std::uint32_t beta) {
  const std::uint32_t q = h.q;
  const std::uint32_t low = alpha / q + beta / q;
  const std::uint32_t high = alpha % q + beta % q;
  if (low == q - 1 || high == q - 1) return std::nullopt;
  const std::int64_t carry_w = low >= q ? 1 : 0;
  const std::int64_t carry_top = high >= q ? 1 : 0;
  return carry_top * static_cast<std::int64_t>(h.range) - carry_w;
}

}  // namespace hamdist
