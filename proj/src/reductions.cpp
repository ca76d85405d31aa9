#include "hamdist/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr unsigned kShiftRetries = 32;

i64 floor_div(i64 v, i64 d) {
  i64 q = v / d;
  if ((v % d != 0) && ((v < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

std::vector<std::uint64_t> count_3sum_variant_naive(const ThreeSumVariantInstance& inst) {
  std::vector<u64> out(inst.n, 0);
  for (i64 x : inst.a)
    for (i64 y : inst.b) {
      const i64 c = x + y;
      if (c >= 0 && static_cast<u64>(c) < inst.n) ++out[static_cast<std::size_t>(c)];
    }
  return out;
}

HammingAs3Sum hamming_to_3sum_instance(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  if (n > 4 * m)
    throw InvalidParameter("n = " + std::to_string(n) + " exceeds 4m = " + std::to_string(4 * m));
  HammingAs3Sum red;
  red.m = m;
  red.shifts = n - m + 1;
  red.instance.n = n;
  const i64 two_n = 2 * static_cast<i64>(n);
  for (std::size_t i = 0; i < m; ++i)
    red.instance.a.push_back(-two_n * static_cast<i64>(pattern[i]) - static_cast<i64>(i));
  for (std::size_t i = 0; i < n; ++i)
    red.instance.b.push_back(two_n * static_cast<i64>(text[i]) + static_cast<i64>(i));
  return red;
}

DistanceVector decode_3sum_counts(const HammingAs3Sum& red, const std::vector<std::uint64_t>& counts) {
  if (counts.size() < red.shifts) throw InvalidParameter("too few counts to decode");
  DistanceVector out;
  out.values.resize(red.shifts);
  for (std::size_t i = 0; i < red.shifts; ++i) out.values[i] = red.m - counts[i];
  return out;
}

std::vector<std::uint64_t> solve_3sum_variant_via_hamming(const ThreeSumVariantInstance& inst,
                                                          const HammingSolver& solver, Rng& rng) {
  const u64 n = inst.n;
  std::vector<u64> counts(n, 0);
  if (n == 0 || inst.a.empty() || inst.b.empty()) return counts;
  const i64 nn = static_cast<i64>(n);

  // After negating A we need -a + b = c; a in group g pairs with B_g and B_{g+1}.
  std::map<i64, std::vector<i64>> ga, gb;
  for (i64 a : inst.a) ga[floor_div(-a, nn)].push_back(-a);
  for (i64 b : inst.b) gb[floor_div(b, nn)].push_back(b);
  struct Group {
    i64 g;
    std::vector<i64> a, b;  // b already offset-ready: members of B_g and B_{g+1}
  };
  std::vector<Group> groups;
  for (const auto& [g, as] : ga) {
    Group grp{g, as, {}};
    for (i64 d = 0; d <= 1; ++d)
      if (auto it = gb.find(g + d); it != gb.end())
        grp.b.insert(grp.b.end(), it->second.begin(), it->second.end());
    if (!grp.b.empty()) groups.push_back(std::move(grp));
  }
  if (groups.empty()) return counts;

  const u64 cap = 4 * static_cast<u64>(std::ceil(std::log2(static_cast<double>(n)))) + 4;
  const u64 labels = groups.size();
  const u64 pat_len = 2 * n, text_len = 3 * n;
  std::uniform_int_distribution<u64> pick(0, n - 1);

  for (unsigned attempt = 0; attempt < kShiftRetries; ++attempt) {
    std::vector<std::vector<std::uint32_t>> pat_at(pat_len), text_at(text_len);
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const Group& grp = groups[gi];
      const i64 off = -grp.g * nn + static_cast<i64>(pick(rng));
      for (i64 a : grp.a) pat_at[static_cast<std::size_t>(a + off)].push_back(static_cast<std::uint32_t>(gi));
      for (i64 b : grp.b) text_at[static_cast<std::size_t>(b + off)].push_back(static_cast<std::uint32_t>(gi));
    }
    std::size_t layers_p = 0, layers_t = 0;
    for (const auto& v : pat_at) layers_p = std::max(layers_p, v.size());
    for (const auto& v : text_at) layers_t = std::max(layers_t, v.size());
    if (layers_p > cap || layers_t > cap) continue;

    // Unused positions get characters that occur nowhere else.
    const u64 sigma = labels + pat_len + text_len;
    std::vector<IntString> patterns, texts;
    for (std::size_t x = 0; x < layers_p; ++x) {
      std::vector<Char> p(pat_len);
      for (std::size_t i = 0; i < pat_len; ++i)
        p[i] = x < pat_at[i].size() ? pat_at[i][x] : static_cast<Char>(labels + i);
      patterns.emplace_back(std::move(p), sigma);
    }
    for (std::size_t y = 0; y < layers_t; ++y) {
      std::vector<Char> t(text_len);
      for (std::size_t i = 0; i < text_len; ++i)
        t[i] = y < text_at[i].size() ? text_at[i][y] : static_cast<Char>(labels + pat_len + i);
      texts.emplace_back(std::move(t), sigma);
    }
    for (const IntString& p : patterns)
      for (const IntString& t : texts) {
        const DistanceVector d = solver(t, p);
        for (u64 i = 0; i < n; ++i) counts[i] += pat_len - d[i];
      }
    return counts;
  }
  throw RetryExhausted("layer occupancy exceeded " + std::to_string(cap) + " in " +
                       std::to_string(kShiftRetries) + " rounds of shifts");
}

std::size_t EqualityProductInstance::aligned_shift(std::size_t i, std::size_t k) const {
  return n * n + i * (n + 1) - k * n;
}

EqualityProductInstance equality_product_to_hamming(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.rows;
  if (a.cols != n || b.rows != n || b.cols != n)
    throw InvalidParameter("equality product reduction needs two N x N matrices");
  if (n == 0) throw InvalidParameter("N must be positive");
  std::vector<i64> values(a.data);
  values.insert(values.end(), b.data.begin(), b.data.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const u64 span = values.size();
  auto letter = [&](std::size_t j, i64 v) {
    const auto rank = std::lower_bound(values.begin(), values.end(), v) - values.begin();
    return static_cast<Char>(j * span + static_cast<u64>(rank));
  };
  const Char dollar = static_cast<Char>(n * span);
  const u64 sigma = n * span + 1;

  std::vector<Char> t(n * n, dollar);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) t.push_back(dollar);
    for (std::size_t j = 0; j < n; ++j) t.push_back(letter(j, a(i, j)));
  }
  t.insert(t.end(), n * n, dollar);
  std::vector<Char> p;
  p.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) p.push_back(letter(j, b(j, k)));
  return {IntString(std::move(t), sigma), IntString(std::move(p), sigma), n};
}

IntMatrix decode_equality_product(const EqualityProductInstance& inst, const DistanceVector& dist) {
  const std::size_t n = inst.n;
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      c(i, k) = static_cast<i64>(n * n) - static_cast<i64>(dist[inst.aligned_shift(i, k)]);
  return c;
}

}  // namespace hamdist
