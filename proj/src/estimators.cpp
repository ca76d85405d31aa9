#include "hamdist/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "hamdist/convolution.hpp"
#include "hamdist/error.hpp"
#include "hamdist/hashing.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u64 kHitConstant = 4;
constexpr std::size_t kBucketCap = 8;
constexpr u64 kBruteForcePairs = 64;

// Stream tags under one base word per call.
constexpr u64 kTagHitting = 1;
constexpr u64 kTagLevel = 2;
constexpr u64 kTagPair = 3;

// Fredman markers; never equal to each other or to a real difference.
constexpr i64 kMarkA = std::numeric_limits<i64>::max();
constexpr i64 kMarkB = std::numeric_limits<i64>::min() + 1;

i64 floor_mod(i64 v, i64 d) {
  const i64 r = v % d;
  return r < 0 ? r + d : r;
}

std::vector<char> sample_mask(std::size_t n, u64 inverse_rate, u64 seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> idx;
  sample_subset(n, inverse_rate, rng, idx);
  std::vector<char> mask(n, 0);
  for (std::uint32_t k : idx) mask[k] = 1;
  return mask;
}

template <class Entry, class Key>
void merge_sorted(std::vector<Entry>& v, Key key) {
  std::sort(v.begin(), v.end(), [&](const Entry& x, const Entry& y) { return key(x) < key(y); });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && key(v[w - 1]) == key(v[r])) {
      v[w - 1].value += v[r].value;
    } else {
      v[w++] = v[r];
    }
  }
  v.resize(w);
  std::erase_if(v, [](const Entry& e) { return e.value == 0; });
}

using SumMap = std::map<i64, i64>;

SumEstimate to_estimate(const SumMap& acc, u64 t, i64 delta) {
  SumEstimate out;
  out.t = t;
  out.delta = delta;
  for (const auto& [z, v] : acc)
    if (v != 0) out.entries.emplace_back(z, v);
  return out;
}

void check_divisible(std::span<const i64> values, i64 delta) {
  if (delta < 1) throw InvalidParameter("delta must be >= 1");
  for (i64 v : values)
    if (v != kAbsent && v % delta != 0)
      throw InvalidParameter("value " + std::to_string(v) + " is not divisible by delta " +
                             std::to_string(delta));
}

// One (i, j, z) triple with the sample that decides its estimate.
struct Choice {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  i64 z = 0;
  int level = -1;  // -1: few-witnesses sample R_ij
  std::uint32_t k0 = 0;
  i64 xi = 0;
  i64 count = 0;
};

using LevelKey = std::tuple<int, std::uint32_t, i64>;

}  // namespace

std::int64_t TriangleEstimate::at(std::uint32_t i, std::uint32_t j, std::int64_t z) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::tuple{i, j, z},
                                   [](const TriangleEntry& e, const std::tuple<std::uint32_t, std::uint32_t, i64>& k) {
                                     return std::tuple{e.i, e.j, e.z} < k;
                                   });
  return it != entries.end() && it->i == i && it->j == j && it->z == z ? it->value : 0;
}

std::int64_t Conv3SumEstimate::at(std::uint32_t h, std::int64_t z) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{h, z},
                                   [](const Conv3SumEntry& e, const std::pair<std::uint32_t, i64>& k) {
                                     return std::pair{e.h, e.z} < k;
                                   });
  return it != entries.end() && it->h == h && it->z == z ? it->value : 0;
}

std::int64_t SumEstimate::at(std::int64_t z) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), z,
                                   [](const std::pair<i64, i64>& e, i64 k) { return e.first < k; });
  return it != entries.end() && it->first == z ? it->second : 0;
}

TriangleEstimate estimate_triangle_counts(const IntMatrix& a, const IntMatrix& b,
                                          std::int64_t delta, std::uint64_t t, std::uint64_t s,
                                          Rng& rng, const EstimatorOptions& opts) {
  if (a.cols != b.rows)
    throw InvalidParameter("inner dimensions differ: " + std::to_string(a.cols) + " vs " +
                           std::to_string(b.rows));
  check_divisible(a.data, delta);
  const std::size_t n1 = a.rows, n2 = a.cols, n3 = b.cols;
  TriangleEstimate out;
  out.delta = delta;
  out.t = t;
  out.s = s;
  if (t < 1 || (n2 > 0 && t > n2))
    throw InvalidParameter("t must lie in [1, " + std::to_string(n2) + "]");
  if (s < 1 || (n2 > 0 && s > std::max<u64>(1, n2 / t)))
    throw InvalidParameter("s must lie in [1, n2 / t]");
  const u64 base = rng();
  if (n1 == 0 || n2 == 0 || n3 == 0) return out;

  const u64 sp = std::bit_floor(s);
  const int levels = std::countr_zero(sp) + 1;
  const u64 log_term = static_cast<u64>(
      std::ceil(std::log2(std::max(2.0, static_cast<double>(n1) * n2 * static_cast<double>(n3)))));

  std::vector<std::vector<char>> in_h(levels, std::vector<char>(n2, 0));
  {
    std::vector<std::uint32_t> all(n2), picked;
    std::iota(all.begin(), all.end(), 0u);
    for (int l = 0; l < levels; ++l) {
      const u64 size = std::min<u64>(n2, kHitConstant * (u64{1} << l) * log_term);
      Rng hr = make_stream(derive_seed(base, kTagHitting), static_cast<u64>(l));
      picked.clear();
      std::sample(all.begin(), all.end(), std::back_inserter(picked), size, hr);
      for (std::uint32_t k : picked) in_h[l][k] = 1;
    }
  }
  const u64 level_seed = derive_seed(base, kTagLevel);
  const u64 pair_seed = derive_seed(base, kTagPair);
  auto level_mask_seed = [&](int l, std::uint32_t k0, i64 xi) {
    return derive_seed(derive_seed(derive_seed(level_seed, static_cast<u64>(l)), k0),
                       static_cast<u64>(xi));
  };
  const bool enumerate = opts.triangle == TriangleBackend::enumerate;

  std::vector<std::vector<Choice>> rows(n1);
#pragma omp parallel if (n1 * n2 * n3 >= (1u << 16))
  {
    std::map<LevelKey, std::vector<char>> cache;
    std::vector<std::pair<i64, std::uint32_t>> wit;
#pragma omp for schedule(dynamic)
    for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n1); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      auto& row = rows[i];
      for (std::size_t j = 0; j < n3; ++j) {
        wit.clear();
        for (std::size_t k = 0; k < n2; ++k) {
          const i64 av = a(i, k), bv = b(k, j);
          if (av == kAbsent || bv == kAbsent) continue;
          wit.emplace_back(av + bv, static_cast<std::uint32_t>(k));
        }
        std::sort(wit.begin(), wit.end());
        std::vector<char> pair_mask;
        for (std::size_t g0 = 0; g0 < wit.size();) {
          std::size_t g1 = g0;
          while (g1 < wit.size() && wit[g1].first == wit[g0].first) ++g1;
          Choice c;
          c.i = static_cast<std::uint32_t>(i);
          c.j = static_cast<std::uint32_t>(j);
          c.z = wit[g0].first;
          for (int l = 0; l < levels && c.level < 0; ++l)
            for (std::size_t x = g0; x < g1; ++x)
              if (in_h[l][wit[x].second]) {
                c.level = l;
                c.k0 = wit[x].second;
                break;
              }
          if (c.level >= 0) {
            c.xi = floor_mod(b(c.k0, j), delta);
            if (enumerate) {
              auto key = LevelKey{c.level, c.k0, c.xi};
              auto it = cache.find(key);
              if (it == cache.end())
                it = cache
                         .emplace(key, sample_mask(n2, (u64{1} << c.level) * t,
                                                   level_mask_seed(c.level, c.k0, c.xi)))
                         .first;
              for (std::size_t x = g0; x < g1; ++x) c.count += it->second[wit[x].second];
            }
          } else {
            if (pair_mask.empty())
              pair_mask = sample_mask(n2, sp * t, derive_seed(pair_seed, i * n3 + j));
            for (std::size_t x = g0; x < g1; ++x) c.count += pair_mask[wit[x].second];
          }
          row.push_back(c);
          g0 = g1;
        }
      }
    }
  }

  if (!enumerate) {
    // Fredman's trick: A'[i,k] = A[i,k] - A[i,k0] against B'[k,j] = B[k0,j] - B[k,j].
    std::map<LevelKey, std::vector<Choice*>> groups;
    for (auto& row : rows)
      for (auto& c : row)
        if (c.level >= 0) groups[{c.level, c.k0, c.xi}].push_back(&c);
    for (auto& [key, members] : groups) {
      const auto [l, k0, xi] = key;
      const std::vector<char> mask = sample_mask(n2, (u64{1} << l) * t, level_mask_seed(l, k0, xi));
      std::vector<std::size_t> r;
      for (std::size_t k = 0; k < n2; ++k)
        if (mask[k]) r.push_back(k);
      if (r.empty()) continue;
      std::vector<std::uint32_t> is, js;
      for (const Choice* c : members) {
        is.push_back(c->i);
        js.push_back(c->j);
      }
      std::sort(is.begin(), is.end());
      is.erase(std::unique(is.begin(), is.end()), is.end());
      std::sort(js.begin(), js.end());
      js.erase(std::unique(js.begin(), js.end()), js.end());
      IntMatrix ap(is.size(), r.size()), bp(r.size(), js.size());
      for (std::size_t x = 0; x < is.size(); ++x)
        for (std::size_t y = 0; y < r.size(); ++y) {
          const i64 v = a(is[x], r[y]);
          ap(x, y) = v == kAbsent ? kMarkA : v - a(is[x], k0);
        }
      for (std::size_t y = 0; y < r.size(); ++y)
        for (std::size_t x = 0; x < js.size(); ++x) {
          const i64 v = b(r[y], js[x]);
          bp(y, x) = v == kAbsent ? kMarkB : b(k0, js[x]) - v;
        }
      const std::size_t rr = std::clamp<std::size_t>(s, 1, r.size());
      const IntMatrix cnt = equality_product(ap, bp, rr, opts.matmul);
      for (Choice* c : members) {
        const auto xi_i = std::lower_bound(is.begin(), is.end(), c->i) - is.begin();
        const auto xj_j = std::lower_bound(js.begin(), js.end(), c->j) - js.begin();
        c->count = cnt(static_cast<std::size_t>(xi_i), static_cast<std::size_t>(xj_j));
      }
    }
  }

  for (const auto& row : rows)
    for (const Choice& c : row) {
      if (c.count == 0) continue;
      const i64 scale = c.level >= 0 ? static_cast<i64>((u64{1} << c.level) * t)
                                     : static_cast<i64>(sp * t);
      out.entries.push_back({c.i, c.j, c.z, c.count * scale});
    }
  return out;
}

Conv3SumEstimate estimate_conv3sum(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, std::int64_t delta,
                                   std::uint64_t t, Rng& rng, const EstimatorOptions& opts) {
  check_divisible(a, delta);
  const std::size_t n = std::max(a.size(), b.size());
  Conv3SumEstimate out;
  out.t = t;
  out.delta = delta;
  if (t < 1 || (n > 0 && t > n)) throw InvalidParameter("t must lie in [1, n]");
  const u64 base = rng();
  if (n == 0) return out;

  const double scale = static_cast<double>(std::max<u64>(t, static_cast<u64>(delta)));
  const std::size_t d = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::sqrt(scale * static_cast<double>(n))), std::min<std::size_t>(t, n), n);
  const std::size_t blocks = (n + d - 1) / d;
  const double w = omega(opts.matmul);
  const double s_raw = std::pow(static_cast<double>(n) / scale, (3.0 - w) / 4.0);
  const u64 s = std::clamp<u64>(static_cast<u64>(s_raw), 1, std::max<u64>(1, d / t));

  IntMatrix am(blocks, d, kAbsent);
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (i * d + k < a.size()) am(i, k) = a[i * d + k];

  std::vector<std::vector<Conv3SumEntry>> parts(blocks);
#pragma omp parallel for schedule(dynamic) if (n >= 256)
  for (std::int64_t ll = 0; ll < static_cast<std::int64_t>(blocks); ++ll) {
    const auto l = static_cast<std::size_t>(ll);
    IntMatrix bm(d, d, kAbsent);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) {
        const std::int64_t idx = static_cast<std::int64_t>(l * d + j) - static_cast<std::int64_t>(k);
        if (idx >= 1 && idx < static_cast<std::int64_t>(b.size())) bm(k, j) = b[static_cast<std::size_t>(idx)];
      }
    Rng sub = make_stream(base, l);
    const TriangleEstimate est = estimate_triangle_counts(am, bm, delta, t, s, sub, opts);
    for (const auto& e : est.entries) {
      const std::size_t h = (e.i + l) * d + e.j;
      if (h < n) parts[l].push_back({static_cast<std::uint32_t>(h), e.z, e.value});
    }
  }
  for (auto& p : parts) out.entries.insert(out.entries.end(), p.begin(), p.end());
  merge_sorted(out.entries, [](const Conv3SumEntry& e) { return std::pair{e.h, e.z}; });
  return out;
}

namespace {

void brute_3sum(std::span<const i64> a, std::span<const i64> b, SumMap& acc) {
  for (i64 x : a)
    for (i64 y : b) ++acc[x + y];
}

void estimate_3sum_rec(std::vector<i64> a, std::vector<i64> b, i64 delta, u64 t, Rng& rng,
                       const EstimatorOptions& opts, unsigned depth, SumMap& acc) {
  if (a.empty() || b.empty()) return;
  if (static_cast<u64>(a.size()) * b.size() <= kBruteForcePairs || depth >= opts.max_3sum_depth) {
    brute_3sum(a, b, acc);
    return;
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const u64 range = std::bit_ceil<u64>(std::max<u64>(a.size(), b.size()));
  const u64 span = std::max(static_cast<u64>(a.back() - a.front()), static_cast<u64>(b.back() - b.front())) + 1;
  const u64 universe = std::bit_ceil(std::max(span, 2 * range));
  if (universe > kMaxHashUniverse) throw InvalidParameter("value spread exceeds the hash universe");
  const LinearHash f = sample_linear_hash(universe, range, rng);

  auto bucketize = [&](const std::vector<i64>& v, i64 lo, std::vector<i64>& good_pos,
                       std::vector<std::size_t>& slot, std::vector<i64>& bad) {
    std::vector<std::uint32_t> load(range, 0);
    std::vector<i64> pos(v.size());
    for (std::size_t x = 0; x < v.size(); ++x) {
      pos[x] = static_cast<i64>(f(static_cast<u64>(v[x] - lo)));
      ++load[static_cast<std::size_t>(pos[x])];
    }
    std::vector<std::uint32_t> next(range, 0);
    good_pos.assign(v.size(), -1);
    slot.assign(v.size(), 0);
    for (std::size_t x = 0; x < v.size(); ++x) {
      const auto p = static_cast<std::size_t>(pos[x]);
      if (load[p] > kBucketCap) {
        bad.push_back(v[x]);
      } else {
        good_pos[x] = pos[x];
        slot[x] = next[p]++;
      }
    }
  };
  std::vector<i64> pa, pb, bad_a, bad_b;
  std::vector<std::size_t> sa, sb;
  bucketize(a, a.front(), pa, sa, bad_a);
  bucketize(b, b.front(), pb, sb, bad_b);

  const std::size_t len = 2 * range;
  const u64 t_eff = std::min<u64>(t, len);
  for (std::size_t p = 0; p < kBucketCap; ++p)
    for (std::size_t q = 0; q < kBucketCap; ++q) {
      std::vector<i64> as(len, kAbsent), bs(len, kAbsent);
      bool any_a = false, any_b = false;
      for (std::size_t x = 0; x < a.size(); ++x)
        if (pa[x] >= 0 && sa[x] == p) {
          as[static_cast<std::size_t>(pa[x])] = a[x];
          any_a = true;
        }
      for (std::size_t y = 0; y < b.size(); ++y)
        if (pb[y] >= 0 && sb[y] == q) {
          bs[static_cast<std::size_t>(pb[y]) + 1] = b[y];
          any_b = true;
        }
      if (!any_a || !any_b) continue;
      const Conv3SumEstimate est = estimate_conv3sum(as, bs, delta, t_eff, rng, opts);
      for (const auto& e : est.entries) acc[e.z] += e.value;
    }

  std::vector<i64> good_a;
  for (std::size_t x = 0; x < a.size(); ++x)
    if (pa[x] >= 0) good_a.push_back(a[x]);
  // Bad elements of A against all of B, then good A against bad B.
  estimate_3sum_rec(std::move(bad_a), b, delta, t, rng, opts, depth + 1, acc);
  estimate_3sum_rec(std::move(good_a), std::move(bad_b), delta, t, rng, opts, depth + 1, acc);
}

}  // namespace

SumEstimate estimate_3sum(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                          std::int64_t delta, std::uint64_t t, Rng& rng,
                          const EstimatorOptions& opts) {
  check_divisible(a, delta);
  if (t < 1) throw InvalidParameter("t must be >= 1");
  SumMap acc;
  estimate_3sum_rec(a, b, delta, t, rng, opts, 0, acc);
  return to_estimate(acc, t, delta);
}

double colored_cutoff(std::uint64_t universe, std::uint64_t t, std::int64_t delta, double omega) {
  const double e = 5.0 + omega;
  const double u = static_cast<double>(universe), tt = static_cast<double>(t);
  const double x1 = std::pow(u, 4.0 / e) * std::pow(tt, (1.0 + omega) / e);
  const double x2 = std::pow(u * tt, 4.0 / e) / std::pow(static_cast<double>(delta), (3.0 - omega) / e);
  return std::max(8.0, std::min(x1, x2));
}

namespace {

void exact_color(std::span<const i64> a, std::span<const i64> b, SumMap& acc) {
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  const u64 la = static_cast<u64>(*amax - *amin) + 1, lb = static_cast<u64>(*bmax - *bmin) + 1;
  if (static_cast<u64>(a.size()) * b.size() <= la + lb) {
    brute_3sum(a, b, acc);
    return;
  }
  Seq wa(la, 0), wb(lb, 0);
  for (i64 x : a) ++wa[static_cast<std::size_t>(x - *amin)];
  for (i64 y : b) ++wb[static_cast<std::size_t>(y - *bmin)];
  const Seq c = convolve_exact(wa, wb);
  for (std::size_t z = 0; z < c.size(); ++z)
    if (c[z] != 0) acc[static_cast<i64>(z) + *amin + *bmin] += static_cast<i64>(c[z]);
}

}  // namespace

SumEstimate estimate_colored_3sum(const std::vector<ColoredValue>& a,
                                  const std::vector<ColoredValue>& b, std::uint64_t universe,
                                  std::int64_t delta, std::uint64_t t, Rng& rng,
                                  const EstimatorOptions& opts) {
  if (delta < 1) throw InvalidParameter("delta must be >= 1");
  if (t < 1) throw InvalidParameter("t must be >= 1");
  for (const auto* side : {&a, &b})
    for (const ColoredValue& e : *side)
      if (e.value < 0 || static_cast<u64>(e.value) >= universe)
        throw DomainError("value " + std::to_string(e.value) + " outside [0, U)");
  for (const ColoredValue& e : a)
    if (e.value % delta != 0)
      throw InvalidParameter("value " + std::to_string(e.value) + " is not divisible by delta");

  auto by_color = [](std::vector<ColoredValue> v) {
    std::sort(v.begin(), v.end(), [](const ColoredValue& x, const ColoredValue& y) {
      return std::pair{x.color, x.value} < std::pair{y.color, y.value};
    });
    return v;
  };
  const std::vector<ColoredValue> sa = by_color(a), sb = by_color(b);
  struct ColorSlice {
    std::vector<i64> a, b;
  };
  std::vector<ColorSlice> colors;
  for (std::size_t p = 0, q = 0; p < sa.size() && q < sb.size();) {
    if (sa[p].color < sb[q].color) {
      ++p;
    } else if (sb[q].color < sa[p].color) {
      ++q;
    } else {
      const i64 c = sa[p].color;
      ColorSlice slice;
      for (; p < sa.size() && sa[p].color == c; ++p) slice.a.push_back(sa[p].value);
      for (; q < sb.size() && sb[q].color == c; ++q) slice.b.push_back(sb[q].value);
      colors.push_back(std::move(slice));
    }
  }

  const double cutoff = colored_cutoff(universe, t, delta, omega(opts.matmul));
  const u64 base = rng();
  std::vector<SumMap> parts(colors.size());
#pragma omp parallel for schedule(dynamic) if (colors.size() > 1)
  for (std::int64_t cc = 0; cc < static_cast<std::int64_t>(colors.size()); ++cc) {
    const auto c = static_cast<std::size_t>(cc);
    const ColorSlice& slice = colors[c];
    const double nc = static_cast<double>(slice.a.size() + slice.b.size());
    if (opts.exact_large_colors && nc > cutoff) {
      exact_color(slice.a, slice.b, parts[c]);
    } else {
      Rng sub = make_stream(base, c);
      estimate_3sum_rec(slice.a, slice.b, delta, t, sub, opts, 0, parts[c]);
    }
  }
  SumMap acc;
  for (const SumMap& p : parts)
    for (const auto& [z, v] : p) acc[z] += v;
  return to_estimate(acc, t, delta);
}

}  // namespace hamdist
