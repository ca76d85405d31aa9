#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "hamdist/primes.hpp"
#include "hamdist/sumset.hpp"

namespace hamdist {
namespace {

using u64 = std::uint64_t;

constexpr u64 kDetBaseUniverse = 1024;

Seq weights(std::span<const u64> v, std::size_t len) {
  Seq w(len, 0);
  for (u64 x : v) ++w[x];
  return w;
}

CountArray det_counts(std::span<const u64> xs, std::span<const u64> ys, u64 universe) {
  const u64 mass = static_cast<u64>(xs.size()) * ys.size();
  if (mass == 0) return CountArray(universe, 0);
  const double n = static_cast<double>(std::max(xs.size(), ys.size()));
  const bool dense = static_cast<double>(mass) / static_cast<double>(universe) > std::sqrt(n);
  if (universe <= kDetBaseUniverse || 2 * universe >= mass || dense)
    return sumset_counts_conv(xs, ys, universe);

  const u64 half = universe / 2;
  const u64 p = next_prime(std::max<u64>(3, 16 * ((mass + universe - 1) / universe)));
  const Seq wx = weights(xs, half), wy = weights(ys, half);
  Seq wxp(wx), wyp(wy);
  for (auto& v : wxp) v %= p;
  for (auto& v : wyp) v %= p;
  Seq c = convolve_mod(wxp, wyp, p);

  // Fold into [U/4] and recurse on universe U/2.
  const u64 quarter = universe / 4;
  std::vector<u64> xr(xs.size()), yr(ys.size());
  std::transform(xs.begin(), xs.end(), xr.begin(), [quarter](u64 x) { return x % quarter; });
  std::transform(ys.begin(), ys.end(), yr.begin(), [quarter](u64 y) { return y % quarter; });
  const CountArray folded = det_counts(xr, yr, half);

  // Every z with COUNT[z] >= p has some z' = z mod U/4 (+ U/4) with
  // COUNT'[z'] >= p/2; keep all four lifts of that residue.
  std::vector<u64> support;
  for (u64 z = 0; z < half; ++z) {
    if (2 * folded[z] < p) continue;
    const u64 r = z % quarter;
    for (u64 j = 0; j < 4; ++j) support.push_back(r + j * quarter);
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  CountArray out = sparse_conv_minus_c(wx, wy, c, support);
  out.resize(universe, 0);
  return out;
}

}  // namespace

CountArray sumset_counts_det(std::span<const u64> xs, std::span<const u64> ys, u64 universe) {
  if (universe < 2 || !std::has_single_bit(universe))
    throw InvalidParameter("universe must be a power of two >= 2");
  for (u64 v : xs)
    if (v >= universe / 2) throw DomainError("X element " + std::to_string(v) + " outside [0, U/2)");
  for (u64 v : ys)
    if (v >= universe / 2) throw DomainError("Y element " + std::to_string(v) + " outside [0, U/2)");
  return det_counts(xs, ys, universe);
}

ModuliFamily isolating_moduli(std::span<const u64> set, u64 universe) {
  ModuliFamily fam;
  fam.elements.assign(set.begin(), set.end());
  std::sort(fam.elements.begin(), fam.elements.end());
  fam.elements.erase(std::unique(fam.elements.begin(), fam.elements.end()), fam.elements.end());
  for (u64 x : fam.elements)
    if (x >= universe) throw DomainError("element " + std::to_string(x) + " outside the universe");
  const std::size_t t = fam.elements.size();
  fam.witness.assign(t, 0);
  if (t == 0) return fam;

  const double log_u = std::max(1.0, std::log2(static_cast<double>(universe)));
  const double log_t = std::max(1.0, std::log2(static_cast<double>(t)));
  u64 m = std::max<u64>(2, static_cast<u64>(std::ceil(static_cast<double>(t) * log_u / log_t)));
  std::vector<char> done(t, 0);
  std::size_t remaining = t;
  std::unordered_map<u64, std::uint32_t> seen;
  while (remaining > 0) {
    m = next_prime(m);
    seen.clear();
    for (u64 x : fam.elements) ++seen[x % m];
    bool useful = false;
    for (std::size_t i = 0; i < t; ++i)
      if (!done[i] && seen[fam.elements[i] % m] == 1) {
        done[i] = 1;
        fam.witness[i] = static_cast<std::uint32_t>(fam.moduli.size());
        --remaining;
        useful = true;
      }
    if (useful) fam.moduli.push_back(m);
    ++m;
  }
  return fam;
}

bool verify_isolation(const ModuliFamily& fam) {
  if (fam.witness.size() != fam.elements.size()) return false;
  for (std::size_t i = 0; i < fam.elements.size(); ++i) {
    if (fam.witness[i] >= fam.moduli.size()) return false;
    const u64 m = fam.moduli[fam.witness[i]];
    for (std::size_t j = 0; j < fam.elements.size(); ++j)
      if (j != i && fam.elements[j] % m == fam.elements[i] % m) return false;
  }
  return true;
}

Seq sparse_conv_minus_c(std::span<const u64> a, std::span<const u64> b, std::span<const u64> c,
                        std::span<const u64> support) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  Seq out(len, 0);
  for (std::size_t i = 0; i < std::min(len, c.size()); ++i) out[i] = c[i];
  for (std::size_t i = len; i < c.size(); ++i)
    if (c[i] != 0) throw PromiseViolated("C has mass beyond the length of A * B");
  if (support.empty()) return out;

  const Seq base = out;
  const u64 top = *std::max_element(support.begin(), support.end());
  const ModuliFamily fam = isolating_moduli(support, std::max<u64>({len, top + 1, 2}));
  for (std::size_t k = 0; k < fam.moduli.size(); ++k) {
    const u64 m = fam.moduli[k];
    Seq am(m, 0), bm(m, 0), cm(m, 0);
    for (std::size_t i = 0; i < a.size(); ++i) am[i % m] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) bm[i % m] += b[i];
    for (std::size_t i = 0; i < len; ++i) cm[i % m] += base[i];
    const Seq conv = convolve_exact(am, bm);
    for (std::size_t i = 0; i < fam.elements.size(); ++i) {
      if (fam.witness[i] != k) continue;
      const u64 x = fam.elements[i];
      if (x >= len) continue;
      const u64 r = x % m;
      const u64 d = conv[r] + (r + m < conv.size() ? conv[r + m] : 0);
      if (d < cm[r])
        throw PromiseViolated("recovered difference at " + std::to_string(x) + " is negative");
      out[x] += d - cm[r];
    }
  }
  return out;
}

}  // namespace hamdist
