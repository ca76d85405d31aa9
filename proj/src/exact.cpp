#include "hamdist/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <tuple>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;

u64 log2_ceil(u64 x) { return x <= 1 ? 0 : static_cast<u64>(std::bit_width(x - 1)); }

// Universe for X = text positions, Y = reflected pattern positions, both in [U/2].
u64 block_universe(std::size_t block_len, std::size_t m) {
  return std::bit_ceil<u64>(2 * std::max<u64>({block_len, m, 1}));
}

// Las Vegas sumset with the rerun-on-slow policy.
CountArray budgeted_sumset(std::span<const u64> xs, std::span<const u64> ys, u64 universe,
                           Rng& rng, const ExactOptions& opts) {
  SumsetOptions so = opts.sumset;
  for (unsigned attempt = 0; attempt <= opts.budget_retries; ++attempt) {
    const bool last = attempt == opts.budget_retries || opts.budget_factor == 0;
    so.work_budget = last ? 0 : opts.budget_factor * universe * (log2_ceil(universe) + 1);
    try {
      return sumset_counts(xs, ys, universe, rng, so);
    } catch (const BudgetExceeded&) {
      if (last) throw;
    }
  }
  return sumset_counts(xs, ys, universe, rng, opts.sumset);
}

enum class Kernel { las_vegas, deterministic };

// Adds |{(a, b) : a - b = i}| to matches[i] for i in [matches.size()).
void add_cross(std::span<const std::uint32_t> text_pos, std::span<const std::uint32_t> pat_pos,
               std::size_t m, u64 universe, bool brute, Kernel kernel, Rng& rng,
               const ExactOptions& opts, std::vector<u64>& matches) {
  if (text_pos.empty() || pat_pos.empty()) return;
  const std::size_t shifts = matches.size();
  if (brute) {
    for (std::uint32_t a : text_pos)
      for (std::uint32_t b : pat_pos)
        if (a >= b && a - b < shifts) ++matches[a - b];
    return;
  }
  std::vector<u64> xs(text_pos.begin(), text_pos.end()), ys(pat_pos.size());
  std::transform(pat_pos.begin(), pat_pos.end(), ys.begin(),
                 [m](std::uint32_t b) { return static_cast<u64>(m - 1 - b); });
  const CountArray c = kernel == Kernel::deterministic
                           ? sumset_counts_det(xs, ys, universe)
                           : budgeted_sumset(xs, ys, universe, rng, opts);
  for (std::size_t i = 0; i < shifts; ++i) matches[i] += c[i + m - 1];
}

double det_threshold(double n) {
  const double ln = std::max(2.0, std::log2(n));
  return std::sqrt(n) * std::pow(ln * std::max(1.0, std::log2(ln)), 0.25);
}

DistanceVector hamming_by_blocks(const IntString& text, const IntString& pattern, Rng* rng,
                                 Kernel kernel, const ExactOptions& opts) {
  validate_instance(text, pattern);
  const std::size_t m = pattern.size();
  const std::vector<TextBlock> blocks = split_blocks(text, pattern);
  const u64 base = rng != nullptr ? (*rng)() : 0;
  std::vector<u64> out(text.size() - m + 1, 0);
#pragma omp parallel for schedule(dynamic) if (blocks.size() > 1)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(blocks.size()); ++bi) {
    const TextBlock& block = blocks[static_cast<std::size_t>(bi)];
    Rng sub = make_stream(base, static_cast<u64>(bi));
    const std::size_t len = block.text.size();
    const u64 universe = block_universe(len, m);
    const double cut = kernel == Kernel::deterministic
                           ? det_threshold(static_cast<double>(len))
                           : std::sqrt(2.0 * static_cast<double>(len));
    std::vector<u64> matches(block.shift_count, 0);
    for (const CharClass& c : char_classes(block.text, pattern).classes) {
      const bool brute = static_cast<double>(c.size()) <= cut;
      add_cross(c.text_positions, c.pattern_positions, m, universe, brute, kernel, sub, opts,
                matches);
    }
    for (auto& v : matches) v = m - v;
    scatter_block(block, matches, out);
  }
  return {std::move(out), DistanceKind::hamming};
}

}  // namespace

DistanceVector exact_hamming(const IntString& text, const IntString& pattern, Rng& rng,
                             const ExactOptions& opts) {
  return hamming_by_blocks(text, pattern, &rng, Kernel::las_vegas, opts);
}

DistanceVector exact_hamming_det(const IntString& text, const IntString& pattern) {
  return hamming_by_blocks(text, pattern, nullptr, Kernel::deterministic, {});
}

DistanceVector dominance_counts(const IntString& text, const IntString& pattern, Rng& rng,
                                const ExactOptions& opts) {
  validate_instance(text, pattern);
  const std::size_t m = pattern.size();
  const std::vector<TextBlock> blocks = split_blocks(text, pattern);
  const u64 base = rng();
  std::vector<u64> out(text.size() - m + 1, 0);
#pragma omp parallel for schedule(dynamic) if (blocks.size() > 1)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(blocks.size()); ++bi) {
    const TextBlock& block = blocks[static_cast<std::size_t>(bi)];
    Rng sub = make_stream(base, static_cast<u64>(bi));
    const std::size_t len = block.text.size();
    const u64 universe = block_universe(len, m);
    const double cut = std::sqrt(2.0 * static_cast<double>(len + m));

    // (value, source, index) with source 0 = pattern, 1 = text.
    struct Item {
      Char value;
      std::uint8_t source;
      std::uint32_t index;
    };
    std::vector<Item> items;
    items.reserve(len + m);
    for (std::size_t j = 0; j < m; ++j) items.push_back({pattern[j], 0, static_cast<std::uint32_t>(j)});
    for (std::size_t a = 0; a < len; ++a)
      items.push_back({block.text[a], 1, static_cast<std::uint32_t>(a)});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
      return std::tie(x.value, x.source, x.index) < std::tie(y.value, y.source, y.index);
    });
    const std::size_t size = std::bit_ceil(items.size());

    std::vector<u64> matches(block.shift_count, 0);
    std::vector<std::uint32_t> left_all, left_c, right_all, right_rest;
    for (std::size_t width = 2; width <= size; width *= 2) {
      const std::size_t half = width / 2;
      const bool brute = static_cast<double>(half) <= cut;
      for (std::size_t lo = 0; lo + half < items.size(); lo += width) {
        const std::size_t mid = lo + half, hi = std::min(lo + width, items.size());
        // Equal values can only straddle the split at the left half's maximum.
        const Char shared = items[mid - 1].value;
        left_all.clear();
        left_c.clear();
        right_all.clear();
        right_rest.clear();
        for (std::size_t x = lo; x < mid; ++x)
          if (items[x].source == 0) (items[x].value == shared ? left_c : left_all).push_back(items[x].index);
        for (std::size_t x = mid; x < hi; ++x)
          if (items[x].source == 1) {
            right_all.push_back(items[x].index);
            if (items[x].value != shared) right_rest.push_back(items[x].index);
          }
        // (L \ L_c) x R and L_c x (R \ R_c)
        add_cross(right_all, left_all, m, universe, brute, Kernel::las_vegas, sub, opts, matches);
        add_cross(right_rest, left_c, m, universe, brute, Kernel::las_vegas, sub, opts, matches);
      }
    }
    scatter_block(block, matches, out);
  }
  return {std::move(out), DistanceKind::dominance};
}

void validate_sparse(const SparseBooleanSeq& s) {
  for (std::size_t i = 0; i < s.support.size(); ++i) {
    if (s.support[i] >= s.universe)
      throw InvalidInstance("position " + std::to_string(s.support[i]) + " outside the universe");
    if (i > 0 && s.support[i] <= s.support[i - 1])
      throw InvalidInstance("support is not strictly increasing");
  }
}

SparseCounts sparse_conv_schoolbook(const SparseBooleanSeq& f, const SparseBooleanSeq& g) {
  std::vector<u64> sums;
  sums.reserve(f.support.size() * g.support.size());
  for (u64 x : f.support)
    for (u64 y : g.support) sums.push_back(x + y);
  std::sort(sums.begin(), sums.end());
  SparseCounts out;
  for (u64 z : sums) {
    if (!out.empty() && out.back().first == z) {
      ++out.back().second;
    } else {
      out.emplace_back(z, 1);
    }
  }
  return out;
}

std::vector<SparseCounts> batch_sparse_boolean_conv(
    std::span<const std::pair<SparseBooleanSeq, SparseBooleanSeq>> pairs, Rng& rng) {
  u64 n = 1;
  for (const auto& [f, g] : pairs) {
    validate_sparse(f);
    validate_sparse(g);
    n = std::max({n, f.universe, g.universe});
  }
  const u64 universe = std::bit_ceil(2 * n);
  const double cut = std::sqrt(2.0 * static_cast<double>(n));
  const u64 base = rng();
  std::vector<SparseCounts> out(pairs.size());
#pragma omp parallel for schedule(dynamic) if (pairs.size() > 1)
  for (std::int64_t pi = 0; pi < static_cast<std::int64_t>(pairs.size()); ++pi) {
    const auto& [f, g] = pairs[static_cast<std::size_t>(pi)];
    const double ni = static_cast<double>(f.support.size() + g.support.size());
    if (ni <= cut || f.support.empty() || g.support.empty()) {
      out[static_cast<std::size_t>(pi)] = sparse_conv_schoolbook(f, g);
      continue;
    }
    Rng sub = make_stream(base, static_cast<u64>(pi));
    const CountArray c = budgeted_sumset(f.support, g.support, universe, sub, ExactOptions{});
    SparseCounts& dst = out[static_cast<std::size_t>(pi)];
    for (u64 z = 0; z < c.size(); ++z)
      if (c[z] != 0) dst.emplace_back(z, c[z]);
  }
  return out;
}

DistanceVector fft_hamming(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  std::vector<u64> matches(n - m + 1, 0);
  std::vector<Char> codes(pattern.chars().begin(), pattern.chars().end());
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  for (Char c : codes) {
    Seq t(n, 0), p(m, 0);
    for (std::size_t i = 0; i < n; ++i) t[i] = text[i] == c;
    for (std::size_t j = 0; j < m; ++j) p[m - 1 - j] = pattern[j] == c;
    const Seq conv = convolve_exact(t, p);
    for (std::size_t i = 0; i < matches.size(); ++i) matches[i] += conv[i + m - 1];
  }
  for (auto& v : matches) v = m - v;
  return {std::move(matches), DistanceKind::hamming};
}

DistanceVector abrahamson_hamming(const IntString& text, const IntString& pattern) {
  validate_instance(text, pattern);
  const std::size_t n = text.size(), m = pattern.size();
  const double cut = std::sqrt(static_cast<double>(m) * std::max(1.0, std::log2(static_cast<double>(m))));
  const CharClassIndex index = char_classes(text, pattern);
  std::vector<u64> matches(n - m + 1, 0);
  for (const CharClass& c : index.classes) {
    if (c.pattern_positions.empty() || c.text_positions.empty()) continue;
    if (static_cast<double>(c.pattern_positions.size()) > cut) {
      Seq t(n, 0), p(m, 0);
      for (std::uint32_t a : c.text_positions) t[a] = 1;
      for (std::uint32_t b : c.pattern_positions) p[m - 1 - b] = 1;
      const Seq conv = convolve_exact(t, p);
      for (std::size_t i = 0; i < matches.size(); ++i) matches[i] += conv[i + m - 1];
    } else {
      for (std::uint32_t a : c.text_positions)
        for (std::uint32_t b : c.pattern_positions)
          if (a >= b && a - b < matches.size()) ++matches[a - b];
    }
  }
  for (auto& v : matches) v = m - v;
  return {std::move(matches), DistanceKind::hamming};
}

}  // namespace hamdist
