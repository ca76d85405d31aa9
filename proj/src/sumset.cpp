#include "hamdist/sumset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hamdist/hashing.hpp"
#include "hamdist/primes.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;

// Universes this small are always convolved directly unless hashing is forced.
constexpr u64 kDirectUniverse = 4096;
// A hash trial is rejected when its bad-element count exceeds this multiple
// of the expectation bound; after kTrialsBeforeWiden rejections the
// acceptance bound doubles.
constexpr double kTrialSlack = 4.0;
constexpr int kTrialsBeforeWiden = 20;
// Modulus above which step 3 switches to exact arithmetic.
constexpr u64 kExactModulus = u64{1} << 40;

struct Context {
  const SumsetOptions& opts;
  SumsetStats& stats;

  void charge(u64 units) {
    stats.work += units;
    if (opts.work_budget != 0 && stats.work > opts.work_budget)
      throw BudgetExceeded("sumset work budget exceeded");
  }
};

void require_universe(u64 universe) {
  if (universe < 2 || !std::has_single_bit(universe))
    throw InvalidParameter("universe must be a power of two >= 2, got " +
                           std::to_string(universe));
  if (universe > kMaxHashUniverse) throw InvalidParameter("universe above 2^48");
}

void require_half(std::span<const u64> v, u64 universe, const char* name) {
  for (u64 x : v)
    if (x >= universe / 2)
      throw DomainError(std::string(name) + " element " + std::to_string(x) +
                        " outside [0, U/2) for U = " + std::to_string(universe));
}

u64 log2_ceil(u64 v) { return v <= 1 ? 0 : static_cast<u64>(std::bit_width(v - 1)); }

Seq dense_weights(std::span<const u64> v, std::size_t len, u64 modulus) {
  Seq w(len, 0);
  for (u64 x : v) {
    w[x] += 1;
    if (modulus != 0 && w[x] == modulus) w[x] = 0;
  }
  return w;
}

CountArray fit(Seq c, u64 universe) {
  c.resize(universe, 0);
  return c;
}

CountArray conv_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe,
                       Context& ctx) {
  if (xs.empty() || ys.empty()) return CountArray(universe, 0);
  const u64 hx = *std::max_element(xs.begin(), xs.end());
  const u64 hy = *std::max_element(ys.begin(), ys.end());
  ctx.charge(static_cast<u64>(hx + hy + 1) * (log2_ceil(hx + hy + 2) + 1));
  return fit(convolve_exact(dense_weights(xs, hx + 1, 0), dense_weights(ys, hy + 1, 0)), universe);
}

// Convolution modulo p, or exact when p == 0.
Seq conv_mod_or_exact(const Seq& a, const Seq& b, u64 p) {
  return p == 0 ? convolve_exact(a, b) : convolve_mod(a, b, p);
}

u64 pow2_floor(double v) {
  if (v < 1) return 1;
  return std::bit_floor(static_cast<u64>(v));
}

u64 clamp_u64(u64 v, u64 lo, u64 hi) { return std::max(lo, std::min(v, hi)); }

// Smallest modulus that preserves every count below `bound`: a prime in
// [bound, 2 bound], or 0 (exact arithmetic) once that would be huge.
u64 modulus_for(u64 bound, u64 mass) {
  if (bound > mass) bound = mass + 1;
  if (bound >= kExactModulus) return 0;
  return find_prime(std::max<u64>(bound, 2), std::max<u64>(2 * bound, 3)).value;
}

CountArray full_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe, Rng& rng,
                       Context& ctx, bool top);

void partial_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe,
                    std::vector<u64> live, std::vector<u64>& known, Rng& rng, Context& ctx);

// Sum over delta in Delta_f of c_f[f(z) + delta].
u64 hashed_count(const Seq& cf, u64 fz, const ErrorSet& errs) {
  u64 total = 0;
  for (std::int64_t d : errs.elements) {
    const std::int64_t idx = static_cast<std::int64_t>(fz) + d;
    if (idx >= 0 && static_cast<std::size_t>(idx) < cf.size()) total += cf[static_cast<std::size_t>(idx)];
  }
  return total;
}

CountArray full_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe, Rng& rng,
                       Context& ctx, bool top) {
  const u64 mass = static_cast<u64>(xs.size()) * ys.size();
  const bool forced = top && ctx.opts.force_hashing;
  if (xs.empty() || ys.empty()) return CountArray(universe, 0);
  if (universe < 16 || (!forced && (2 * universe >= mass || universe <= kDirectUniverse)))
    return conv_counts(xs, ys, universe, ctx);

  u64 r1;
  if (top && ctx.opts.first_level_r) {
    r1 = *ctx.opts.first_level_r;
  } else {
    const double ratio = static_cast<double>(mass) / static_cast<double>(universe);
    r1 = pow2_floor(std::min(std::pow(ratio, 8.0), static_cast<double>(universe / 64)));
  }
  r1 = clamp_u64(std::bit_floor(std::max<u64>(r1, 1)), 4, universe / 4);
  const u64 range = universe / r1;
  const u64 s = r1;
  const u64 threshold = static_cast<u64>(
      std::min<double>(2.0 * static_cast<double>(s) * static_cast<double>(mass) / static_cast<double>(range),
                       static_cast<double>(mass) + 1));

  // Once every count is certainly below the light threshold, the single
  // modular convolution is already exact.
  if (!forced && threshold > mass) return conv_counts(xs, ys, universe, ctx);

  std::vector<u64> fx(xs.size()), fy(ys.size());
  Seq cf;
  LinearHash f;
  std::vector<u64> live;
  double widen = 1.0;
  for (int failures = 0;; ++failures) {
    if (failures == kTrialsBeforeWiden) {
      widen *= 2;
      failures = 0;
    }
    ++ctx.stats.hash_trials;
    f = sample_linear_hash(universe, range, rng);
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    for (std::size_t i = 0; i < ys.size(); ++i) fy[i] = f(ys[i]);
    cf = full_counts(fx, fy, 2 * range, rng, ctx, false);
    const ErrorSet errs = f.errors();
    live.clear();
    ctx.charge(universe);
    for (u64 z = 0; z < universe; ++z)
      if (hashed_count(cf, f(z), errs) >= threshold) live.push_back(z);
    const double bound =
        widen * (kTrialSlack * (static_cast<double>(range) + static_cast<double>(universe)) /
                     static_cast<double>(s) +
                 16);
    if (static_cast<double>(live.size()) <= bound) break;
  }

  const u64 p = modulus_for(threshold, mass);
  ctx.charge(universe * (log2_ceil(universe) + 1));
  CountArray counts = fit(conv_mod_or_exact(dense_weights(xs, universe / 2, p),
                                            dense_weights(ys, universe / 2, p), p),
                          universe);
  if (!live.empty()) partial_counts(xs, ys, universe, std::move(live), counts, rng, ctx);
  return counts;
}

void direct_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe,
                   std::span<const u64> live, std::vector<u64>& known, Context& ctx) {
  const Seq wy = dense_weights(ys, universe / 2, 0);
  ctx.charge(static_cast<u64>(live.size()) * xs.size() + universe / 2);
  for (u64 z : live) {
    u64 c = 0;
    for (u64 x : xs)
      if (x <= z && z - x < wy.size()) c += wy[z - x];
    known[z] = c;
  }
}

void partial_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe,
                    std::vector<u64> live, std::vector<u64>& known, Rng& rng, Context& ctx) {
  const u64 mass = static_cast<u64>(xs.size()) * ys.size();
  unsigned depth = 0;
  int stalled = 0;
  std::vector<char> is_live(universe, 0);
  while (!live.empty()) {
    ++ctx.stats.partial_levels;
    const u64 m_live = live.size();
    if (m_live * std::min(xs.size(), ys.size()) <= 4 * universe || universe < 16) {
      direct_counts(xs.size() <= ys.size() ? xs : ys, xs.size() <= ys.size() ? ys : xs, universe,
                    live, known, ctx);
      return;
    }
    if (depth >= ctx.opts.max_depth || stalled >= 3) {
      ++ctx.stats.fallbacks;
      const CountArray all = conv_counts(xs, ys, universe, ctx);
      for (u64 z : live) known[z] = all[z];
      return;
    }

    const double r = std::max(1.0, static_cast<double>(universe) / static_cast<double>(m_live));
    const u64 range = clamp_u64(pow2_floor(static_cast<double>(universe) / std::pow(r, 1.5)), 2,
                                universe / 4);
    const double s = std::sqrt(r), t = std::sqrt(r);
    const auto q = static_cast<std::uint32_t>(
        clamp_u64(pow2_floor(std::pow(r, 0.125)), 2, universe / 2));
    const u64 v_range = clamp_u64(std::bit_ceil(static_cast<u64>(std::ceil(t * static_cast<double>(m_live)))),
                                  q, universe);
    const u64 threshold = static_cast<u64>(std::min<double>(
        std::ceil(2.0 * s * static_cast<double>(mass) / static_cast<double>(range)),
        static_cast<double>(mass) + 1));

    // Step 1: light / heavy.
    std::vector<char> heavy(m_live, 0);
    {
      std::vector<u64> fx(xs.size()), fy(ys.size());
      double widen = 1.0;
      for (int failures = 0;; ++failures) {
        if (failures == kTrialsBeforeWiden) {
          widen *= 2;
          failures = 0;
        }
        ++ctx.stats.hash_trials;
        const LinearHash f = sample_linear_hash(universe, range, rng);
        for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
        for (std::size_t i = 0; i < ys.size(); ++i) fy[i] = f(ys[i]);
        const Seq cf = full_counts(fx, fy, 2 * range, rng, ctx, false);
        const ErrorSet errs = f.errors();
        u64 heavy_count = 0;
        ctx.charge(m_live);
        for (std::size_t i = 0; i < m_live; ++i) {
          heavy[i] = hashed_count(cf, f(live[i]), errs) >= threshold;
          heavy_count += static_cast<u64>(heavy[i]);
        }
        const double bound =
            widen * (kTrialSlack * (static_cast<double>(range) + static_cast<double>(m_live)) / s + 16);
        if (static_cast<double>(heavy_count) <= bound) break;
      }
    }

    // Step 2: isolated / non-isolated.
    PredictableHash h;
    std::vector<u64> hz(m_live);
    std::vector<char> isolated(m_live, 0);
    {
      std::vector<std::uint32_t> bucket(v_range, 0);
      double widen = 1.0;
      for (int failures = 0;; ++failures) {
        if (failures == kTrialsBeforeWiden) {
          widen *= 2;
          failures = 0;
        }
        ++ctx.stats.hash_trials;
        h = sample_predictable_hash(universe, v_range, q, rng);
        std::fill(bucket.begin(), bucket.end(), 0);
        for (std::size_t i = 0; i < m_live; ++i) {
          hz[i] = h.value(live[i]);
          ++bucket[hz[i]];
        }
        u64 crowded = 0;
        for (std::size_t i = 0; i < m_live; ++i) {
          isolated[i] = bucket[hz[i]] == 1;
          crowded += static_cast<u64>(!isolated[i]);
        }
        ctx.charge(m_live + v_range);
        const double bound = widen * (kTrialSlack * static_cast<double>(m_live) / t + 16);
        if (static_cast<double>(crowded) <= bound) break;
      }
    }

    // Step 3: c[k] mod p, then peel off the known non-live mass per bucket.
    const u64 p = modulus_for(threshold, mass);
    auto reduce = [p](u64 v) { return p == 0 ? v : v % p; };
    const std::uint32_t labels = h.label_count();
    std::vector<std::vector<std::pair<u64, u64>>> xl(labels), yl(labels);
    for (u64 x : xs) {
      const HashedValue hv = h(x);
      xl[hv.label].emplace_back(x, hv.value);
    }
    for (u64 y : ys) {
      const HashedValue hv = h(y);
      yl[hv.label].emplace_back(y, hv.value);
    }
    Seq c(v_range, 0);
    for (std::uint32_t a = 0; a < labels; ++a) {
      if (xl[a].empty()) continue;
      Seq wa;
      for (std::uint32_t b = 0; b < labels; ++b) {
        if (yl[b].empty()) continue;
        const std::optional<std::int64_t> err = phi(h, a, b);
        if (!err) {
          ctx.charge(static_cast<u64>(xl[a].size()) * yl[b].size());
          for (const auto& [x, hxv] : xl[a])
            for (const auto& [y, hyv] : yl[b]) {
              const u64 k = h.value(x + y);
              c[k] = reduce(c[k] + 1);
            }
          continue;
        }
        if (wa.empty()) {
          wa.assign(v_range, 0);
          for (const auto& e : xl[a]) wa[e.second] = reduce(wa[e.second] + 1);
        }
        Seq wb(v_range, 0);
        for (const auto& e : yl[b]) wb[e.second] = reduce(wb[e.second] + 1);
        ctx.charge(2 * v_range * (log2_ceil(v_range) + 1));
        const Seq conv = conv_mod_or_exact(wa, wb, p);
        for (u64 k = 0; k < v_range; ++k) {
          const std::int64_t idx = static_cast<std::int64_t>(k) + *err;
          if (idx >= 0 && static_cast<std::size_t>(idx) < conv.size())
            c[k] = reduce(c[k] + conv[static_cast<std::size_t>(idx)]);
        }
      }
    }

    for (u64 z : live) is_live[z] = 1;
    Seq known_mass(v_range, 0);
    ctx.charge(universe);
    for (u64 z = 0; z < universe; ++z)
      if (!is_live[z]) {
        const u64 k = h.value(z);
        known_mass[k] = reduce(known_mass[k] + reduce(known[z]));
      }
    for (u64 z : live) is_live[z] = 0;

    std::vector<u64> next;
    for (std::size_t i = 0; i < m_live; ++i) {
      if (isolated[i] && !heavy[i]) {
        const u64 k = hz[i];
        known[live[i]] = p == 0 ? c[k] - known_mass[k] : (c[k] + p - known_mass[k]) % p;
      } else {
        next.push_back(live[i]);
      }
    }
    // Step 4: the rest go around again.
    stalled = next.size() == m_live ? stalled + 1 : 0;
    live = std::move(next);
    ++depth;
  }
}

}  // namespace

CountArray sumset_counts_naive(std::span<const u64> xs, std::span<const u64> ys, u64 universe) {
  CountArray c(universe, 0);
  for (u64 x : xs)
    for (u64 y : ys) {
      if (x + y >= universe)
        throw DomainError("sum " + std::to_string(x + y) + " outside [0, " +
                          std::to_string(universe) + ")");
      ++c[x + y];
    }
  return c;
}

CountArray sumset_counts_conv(std::span<const u64> xs, std::span<const u64> ys, u64 universe) {
  if (!xs.empty() && !ys.empty() &&
      *std::max_element(xs.begin(), xs.end()) + *std::max_element(ys.begin(), ys.end()) >= universe)
    throw DomainError("some sum falls outside the universe");
  SumsetOptions opts;
  SumsetStats stats;
  Context ctx{opts, stats};
  return conv_counts(xs, ys, universe, ctx);
}

CountArray sumset_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe, Rng& rng,
                         const SumsetOptions& opts, SumsetStats* stats) {
  require_universe(universe);
  require_half(xs, universe, "X");
  require_half(ys, universe, "Y");
  SumsetStats local;
  Context ctx{opts, stats ? *stats : local};
  return full_counts(xs, ys, universe, rng, ctx, true);
}

std::vector<u64> sumset_counts_partial(std::span<const u64> xs, std::span<const u64> ys,
                                       u64 universe, std::span<const u64> live,
                                       std::span<const u64> known, Rng& rng,
                                       const SumsetOptions& opts, SumsetStats* stats) {
  require_universe(universe);
  require_half(xs, universe, "X");
  require_half(ys, universe, "Y");
  if (known.size() != universe) throw InvalidParameter("known table must have length U");
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (live[i] >= universe) throw DomainError("live element outside the universe");
    if (i > 0 && live[i] <= live[i - 1])
      throw InvalidParameter("live elements must be sorted and distinct");
  }
  SumsetStats local;
  Context ctx{opts, stats ? *stats : local};
  std::vector<u64> table(known.begin(), known.end());
  partial_counts(xs, ys, universe, std::vector<u64>(live.begin(), live.end()), table, rng, ctx);
  std::vector<u64> out;
  out.reserve(live.size());
  for (u64 z : live) out.push_back(table[z]);
  return out;
}

}  // namespace hamdist
