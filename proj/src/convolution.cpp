#include "hamdist/convolution.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Two NTT-friendly primes below 2^62: 29 * 2^57 + 1 and 27 * 2^56 + 1.
constexpr u64 kPrime1 = 4179340454199820289ULL;
constexpr u64 kPrime2 = 1945555039024054273ULL;
constexpr u64 kRoot1 = 3;
constexpr u64 kRoot2 = 5;
constexpr unsigned kMaxLog = 56;

// Below this many butterflies per level the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelButterflies = std::size_t{1} << 15;
constexpr std::size_t kSchoolbookCutoff = 48;

class Montgomery {
 public:
  explicit Montgomery(u64 mod) : mod_(mod) {
    u64 inv = mod;
    for (int i = 0; i < 6; ++i) inv *= 2 - mod * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % mod);
    r2_ = static_cast<u64>(static_cast<u128>(r2_) * r2_ % mod);
  }

  u64 mod() const { return mod_; }

  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * neg_inv_;
    u64 u = static_cast<u64>((t + static_cast<u128>(m) * mod_) >> 64);
    return u >= mod_ ? u - mod_ : u;
  }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
  u64 to(u64 x) const { return mul(x % mod_, r2_); }
  u64 from(u64 x) const { return reduce(x); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod_ - b; }
  u64 pow(u64 base_mont, u64 e) const {
    u64 r = to(1);
    while (e) {
      if (e & 1) r = mul(r, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return r;
  }

 private:
  u64 mod_;
  u64 neg_inv_ = 0;
  u64 r2_ = 0;
};

// Twiddle table for one prime: tw[len + j] = w_{2 len}^j in Montgomery form.
// The table for size n serves every smaller power of two.
class TwiddleCache {
 public:
  TwiddleCache(u64 mod, u64 root) : mont_(mod), root_(root) {}

  const Montgomery& mont() const { return mont_; }

  std::shared_ptr<const std::vector<u64>> get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    if (table_ && table_->size() >= n) return table_;
    auto t = std::make_shared<std::vector<u64>>(n, 0);
    const u64 order = mont_.mod() - 1;
    for (std::size_t len = 1; len < n; len <<= 1) {
      const u64 w = mont_.pow(mont_.to(root_), order / (2 * len));
      u64 cur = mont_.to(1);
      for (std::size_t j = 0; j < len; ++j) {
        (*t)[len + j] = cur;
        cur = mont_.mul(cur, w);
      }
    }
    table_ = std::move(t);
    return table_;
  }

 private:
  Montgomery mont_;
  u64 root_;
  std::mutex mu_;
  std::shared_ptr<const std::vector<u64>> table_;
};

TwiddleCache& cache_for(int which) {
  static TwiddleCache c1(kPrime1, kRoot1);
  static TwiddleCache c2(kPrime2, kRoot2);
  return which == 0 ? c1 : c2;
}

void ntt(std::vector<u64>& a, const Montgomery& mt, const std::vector<u64>& tw, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto half = static_cast<std::int64_t>(n / 2);
  for (std::size_t len = 1; len < n; len <<= 1) {
    const unsigned shift = static_cast<unsigned>(std::countr_zero(len));
#pragma omp parallel for schedule(static) if (n / 2 >= kParallelButterflies)
    for (std::int64_t b = 0; b < half; ++b) {
      const std::size_t ub = static_cast<std::size_t>(b);
      const std::size_t j = ub & (len - 1);
      const std::size_t i = ((ub >> shift) << (shift + 1)) + j;
      const u64 u = a[i];
      const u64 v = mt.mul(a[i + len], tw[len + j]);
      a[i] = mt.add(u, v);
      a[i + len] = mt.sub(u, v);
    }
  }
  if (inverse) {
    std::reverse(a.begin() + 1, a.end());
    const u64 inv_n = mt.pow(mt.to(n % mt.mod()), mt.mod() - 2);
    for (auto& x : a) x = mt.mul(x, inv_n);
  }
}

// Cyclic-free convolution of already-reduced words modulo one NTT prime.
// Returns plain (non-Montgomery) residues.
std::vector<u64> ntt_convolve(std::span<const u128> a, std::span<const u128> b, int which) {
  TwiddleCache& cache = cache_for(which);
  const Montgomery& mt = cache.mont();
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = std::bit_ceil(out_len);
  if (std::countr_zero(n) > static_cast<int>(kMaxLog))
    throw InvalidParameter("convolution length exceeds the NTT size limit");
  const auto tw = cache.get(n);
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    fa[i] = mt.to(static_cast<u64>(a[i] % mt.mod()));
  for (std::size_t i = 0; i < b.size(); ++i)
    fb[i] = mt.to(static_cast<u64>(b[i] % mt.mod()));
  ntt(fa, mt, *tw, false);
  ntt(fb, mt, *tw, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mt.mul(fa[i], fb[i]);
  ntt(fa, mt, *tw, true);
  fa.resize(out_len);
  for (auto& x : fa) x = mt.from(x);
  return fa;
}

// Exact convolution of words whose true outputs are below 2^bound_bits.
std::vector<u128> ntt_convolve_exact(std::span<const u128> a, std::span<const u128> b,
                                     unsigned ntt_primes) {
  std::vector<u64> r1 = ntt_convolve(a, b, 0);
  std::vector<u128> out(r1.begin(), r1.end());
  if (ntt_primes == 1) return out;
  std::vector<u64> r2 = ntt_convolve(a, b, 1);
  // Garner: x = r1 + P1 * ((r2 - r1) * P1^{-1} mod P2).
  const Montgomery m2(kPrime2);
  const u64 p1_mod_p2 = kPrime1 % kPrime2;
  const u64 inv_p1 = m2.pow(m2.to(p1_mod_p2), kPrime2 - 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const u64 x1 = r1[i] % kPrime2;
    const u64 diff = m2.to(r2[i] >= x1 ? r2[i] - x1 : r2[i] + kPrime2 - x1);
    const u64 k = m2.from(m2.mul(diff, inv_p1));
    out[i] = static_cast<u128>(r1[i]) + static_cast<u128>(kPrime1) * k;
  }
  return out;
}

unsigned bit_length(u128 x) {
  unsigned b = 0;
  while (x) {
    ++b;
    x >>= 1;
  }
  return b;
}

u128 checked_sum(std::span<const u64> a) {
  u128 s = 0;
  for (u64 x : a) s += x;
  return s;
}

void check_reduced(std::span<const u64> a, u64 p) {
  for (u64 x : a)
    if (x >= p)
      throw InvalidParameter("coefficient " + std::to_string(x) + " not reduced mod " +
                             std::to_string(p));
}

}  // namespace

Seq convolve_schoolbook(std::span<const u64> a, std::span<const u64> b) {
  if (a.empty() || b.empty()) return {};
  Seq c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Seq convolve_exact(std::span<const u64> a, std::span<const u64> b) {
  if (a.empty() || b.empty()) return {};
  const u128 bound = checked_sum(a) * checked_sum(b);
  if (bound >= (static_cast<u128>(1) << 63))
    throw OverflowError("exact convolution may exceed 63 bits (sum(a) * sum(b) too large)");
  if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) return convolve_schoolbook(a, b);
  const std::vector<u128> wa(a.begin(), a.end()), wb(b.begin(), b.end());
  const unsigned primes = bound < kPrime1 ? 1 : 2;
  const std::vector<u128> r = ntt_convolve_exact(wa, wb, primes);
  return Seq(r.begin(), r.end());
}

PackingPlan plan_packing(u64 p, std::size_t max_len) {
  const u128 lane_max = static_cast<u128>(p - 1) * (p - 1) * std::max<std::size_t>(max_len, 1);
  PackingPlan best;
  best.lane_bits = bit_length(lane_max) + 1;
  double best_cost = 1e300;
  // One prime holds 61 clean bits, two primes hold 121.
  for (unsigned primes : {1u, 2u}) {
    const unsigned budget = primes == 1 ? 61 : 121;
    if (best.lane_bits > budget) continue;
    const unsigned k = (budget / best.lane_bits + 1) / 2;
    const double cost = static_cast<double>(primes) / k;
    if (cost < best_cost) {
      best_cost = cost;
      best.per_word = k;
      best.ntt_primes = primes;
    }
  }
  if (best_cost == 1e300) throw InvalidParameter("modulus too large for packed convolution");
  return best;
}

Seq convolve_mod_packed(std::span<const u64> a, std::span<const u64> b, u64 p,
                        const PackingPlan& plan) {
  if (a.empty() || b.empty()) return {};
  const std::size_t k = plan.per_word;
  const unsigned lam = plan.lane_bits;
  auto pack = [&](std::span<const u64> s) {
    std::vector<u128> w((s.size() + k - 1) / k, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
      w[i / k] |= static_cast<u128>(s[i]) << (lam * (i % k));
    return w;
  };
  const std::vector<u128> pa = pack(a), pb = pack(b);
  const std::vector<u128> e = ntt_convolve_exact(pa, pb, plan.ntt_primes);
  const u128 mask = (static_cast<u128>(1) << lam) - 1;
  auto lane = [&](std::size_t j, std::size_t d) -> u128 {
    if (j >= e.size() || d > 2 * k - 2) return 0;
    return (e[j] >> (lam * d)) & mask;
  };
  Seq c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t j = i / k, d = i % k;
    u128 v = lane(j, d);
    if (j > 0) v += lane(j - 1, d + k);
    c[i] = static_cast<u64>(v % p);
  }
  return c;
}

Seq convolve_mod(std::span<const u64> a, std::span<const u64> b, u64 p) {
  if (p < 2) throw InvalidModulus("modulus must be at least 2");
  check_reduced(a, p);
  check_reduced(b, p);
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= kSchoolbookCutoff) {
    Seq c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        c[i + j] = static_cast<u64>((static_cast<u128>(a[i]) * b[j] + c[i + j]) % p);
    return c;
  }
  return convolve_mod_packed(a, b, p, plan_packing(p, std::max(a.size(), b.size())));
}

Seq convolve_mod_p(std::span<const u64> a, std::span<const u64> b, const PrimeWitness& p) {
  if (!is_prime(p.value)) throw InvalidModulus(std::to_string(p.value) + " is not prime");
  return convolve_mod(a, b, p.value);
}

}  // namespace hamdist
