// Acceptance run: one PASS/FAIL line per criterion AC1..AC12.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hamdist/approx_hamming.hpp"
#include "hamdist/convolution.hpp"
#include "hamdist/estimators.hpp"
#include "hamdist/exact.hpp"
#include "hamdist/hashing.hpp"
#include "hamdist/matrix.hpp"
#include "hamdist/primes.hpp"
#include "hamdist/reductions.hpp"
#include "hamdist/strings.hpp"
#include "hamdist/sumset.hpp"

using namespace hamdist;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (pass) note << why;
    pass = false;
  }
};

struct Moments {
  double n = 0, mean = 0, m2 = 0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double var() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  double se() const { return std::sqrt(var() / n); }
};

// |mean - truth| <= 4 stderr; a zero-variance estimator must be exact.
bool within_4se(const Moments& m, double truth) {
  return std::abs(m.mean - truth) <= 4 * m.se() + 1e-9;
}

bool cov_near_zero(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t r = 0; r < x.size(); ++r) mx += x[r] / n, my += y[r] / n;
  Moments p;
  for (std::size_t r = 0; r < x.size(); ++r) p.add((x[r] - mx) * (y[r] - my));
  return std::abs(p.mean) <= 4 * p.se() + 1e-9;
}

std::vector<std::uint64_t> recount(const IntString& t, const IntString& p) {
  std::vector<std::uint64_t> out(t.size() - p.size() + 1, 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out[i] += t[i + j] != p[j];
  return out;
}

// AC1
void exact_randomized(Outcome& o) {
  const auto t0 = Clock::now();
  Rng gen(101);
  const std::uint64_t sigmas[] = {2, 16, 256, 0};
  std::size_t runs = 0;
  for (int inst = 0; inst < 1000 && o.pass; ++inst) {
    const std::size_t n = 4 + gen() % 4093;
    const std::size_t ms[] = {n / 4, n / 2, n};
    const std::size_t m = ms[inst % 3];
    const std::uint64_t sigma = sigmas[(inst / 3) % 4] ? sigmas[(inst / 3) % 4] : n;
    const IntString t = random_string(n, sigma, gen), p = random_string(m, sigma, gen);
    const DistanceVector want = hamming_oracle(t, p);
    for (std::uint64_t seed = 0; seed < 10; ++seed, ++runs) {
      Rng rng(derive_seed(inst, seed));
      if (exact_hamming(t, p, rng) != want) {
        o.fail("mismatch at instance " + std::to_string(inst) + " seed " + std::to_string(seed));
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 120) o.fail("suite took " + std::to_string(secs) + " s");
  o.note << (o.pass ? "" : "; ") << runs << " runs in " << secs << " s";
}

// AC2
void exact_deterministic(Outcome& o) {
  Rng gen(202);
  for (int inst = 0; inst < 200 && o.pass; ++inst) {
    const std::size_t n = 4 + gen() % 4093;
    const std::size_t m = std::max<std::size_t>(1, n >> (inst % 3));
    const std::uint64_t sigmas[] = {2, 16, 256, n};
    const std::uint64_t sigma = sigmas[(inst / 3) % 4];
    const IntString t = random_string(n, sigma, gen), p = random_string(m, sigma, gen);
    const DistanceVector first = exact_hamming_det(t, p);
    if (first.values != recount(t, p)) o.fail("mismatch at instance " + std::to_string(inst));
    for (int r = 1; r < 5 && o.pass; ++r)
      if (exact_hamming_det(t, p) != first) o.fail("run " + std::to_string(r) + " differs at instance " + std::to_string(inst));
  }
  if (o.pass) o.note << "200 instances x 5 runs";
}

// AC3
void sumset_kernel(Outcome& o) {
  Rng gen(303);
  for (int inst = 0; inst < 500 && o.pass; ++inst) {
    const std::uint64_t n = 2 + gen() % 511;
    const std::uint64_t targets[] = {n, n * n / 4, n * n / 2};
    const std::uint64_t U = std::max<std::uint64_t>(2, std::bit_ceil(targets[inst % 3]));
    std::vector<std::uint64_t> x(n), y(n);
    for (auto& v : x) v = gen() % (U / 2);
    for (auto& v : y) v = gen() % (U / 2);
    Rng rng(derive_seed(303, inst));
    if (sumset_counts(x, y, U, rng) != sumset_counts_naive(x, y, U))
      o.fail("mismatch at instance " + std::to_string(inst));
  }
  const std::uint64_t n = 1 << 11, U = n * n / 2;
  std::vector<std::uint64_t> x(n), y(n);
  for (auto& v : x) v = gen() % (U / 2);
  for (auto& v : y) v = gen() % (U / 2);
  std::vector<double> lv, conv;
  for (int r = 0; r < 5; ++r) {
    Rng rng(r);
    auto t0 = Clock::now();
    const auto a = sumset_counts(x, y, U, rng);
    lv.push_back(seconds_since(t0));
    t0 = Clock::now();
    const auto b = sumset_counts_conv(x, y, U);
    conv.push_back(seconds_since(t0));
    if (a != b) o.fail("timing instance disagrees");
  }
  std::sort(lv.begin(), lv.end());
  std::sort(conv.begin(), conv.end());
  const double ratio = lv[2] / conv[2];
  if (ratio > 4) o.fail("runtime ratio " + std::to_string(ratio));
  o.note << (o.pass ? "" : "; ") << "500 instances exact; n=2^11 U=n^2/2 median ratio " << ratio;
}

// AC4
void hash_soundness(Outcome& o) {
  Rng rng(404);
  const std::uint64_t U = 1 << 10;
  for (std::uint64_t L : {8u, 32u})
    for (int s = 0; s < 100 && o.pass; ++s) {
      const LinearHash f = sample_linear_hash(U, L, rng);
      const ErrorSet errs = f.errors();
      for (std::uint64_t x = 0; x < U && o.pass; ++x)
        for (std::uint64_t y = 0; y < U; ++y) {
          const auto e = static_cast<std::int64_t>(f(x) + f(y)) - static_cast<std::int64_t>(f(x + y));
          if (!errs.contains(e)) {
            o.fail("error " + std::to_string(e) + " outside the error set");
            break;
          }
        }
    }
  std::uint64_t defined = 0;
  for (std::uint32_t q : {2u, 4u})
    for (int s = 0; s < 100 && o.pass; ++s) {
      const PredictableHash h = sample_predictable_hash(256, 16, q, rng);
      for (std::uint64_t x = 0; x < 128; ++x)
        for (std::uint64_t y = 0; y < 128; ++y) {
          const auto p = phi(h, h(x).label, h(y).label);
          if (!p) continue;
          ++defined;
          const auto e = static_cast<std::int64_t>(h.value(x) + h.value(y)) - static_cast<std::int64_t>(h.value(x + y));
          if (*p != e) o.fail("predictor wrong at x=" + std::to_string(x) + " y=" + std::to_string(y));
        }
    }
  if (o.pass) o.note << "2x100 functions exhaustive at U=2^10; " << defined << " predicted pairs exact at U=2^8";
}

// AC5
void hash_statistics(Outcome& o) {
  Rng rng(505);
  const std::uint64_t U = 1 << 20, V = 1 << 8;
  const std::uint32_t q = 16;
  Moments coll, bad;
  for (int s = 0; s < 100000; ++s) {
    const PredictableHash h = sample_predictable_hash(U, V, q, rng);
    coll.add(h.value(77777) == h.value(123456) ? 1.0 : 0.0);
    bad.add(phi(h, h(4242).label, h(300001).label) ? 0.0 : 1.0);
  }
  if (coll.mean > 2.0 / V + 3 * coll.se()) o.fail("collision rate " + std::to_string(coll.mean));
  if (bad.mean > 8.0 / q + 3 * bad.se()) o.fail("bad-pair rate " + std::to_string(bad.mean));
  o.note << (o.pass ? "" : "; ") << "collision " << coll.mean << " (bound " << 2.0 / V << "), bad " << bad.mean
         << " (bound " << 8.0 / q << ")";
}

// AC6 helpers: each estimator instance becomes a sampler that returns estimates at a
// fixed key list, plus the true counts and a variance bound.
struct EstimatorCase {
  std::string name;
  std::vector<double> truth;
  std::vector<int> residue;  // key class for the uncorrelation check
  std::vector<int> group;    // (i, j) or h; keys in the same group are not paired
  double var_bound = 0;
  int seeds = 10000;
  std::function<std::vector<double>(Rng&)> sample;
  std::function<std::vector<double>(Rng&)> exact;  // rate-1 run on the same keys
};

IntMatrix fill(std::size_t r, std::size_t c, std::int64_t lo, std::int64_t hi, std::int64_t mult, Rng& g) {
  IntMatrix m(r, c);
  for (auto& x : m.data) x = (lo + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(hi - lo + 1))) * mult;
  return m;
}

std::vector<std::int64_t> fill_vec(std::size_t n, std::int64_t lo, std::int64_t hi, std::int64_t mult, Rng& g) {
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = (lo + static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(hi - lo + 1))) * mult;
  return v;
}

template <class Map>
auto top_keys(const Map& counts, std::size_t k) {
  std::vector<std::pair<typename Map::key_type, std::int64_t>> v(counts.begin(), counts.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  v.resize(std::min(v.size(), k));
  return v;
}

std::vector<EstimatorCase> triangle_cases() {
  std::vector<EstimatorCase> out;
  Rng g(61);
  struct Shape { std::size_t n1, n2, n3; std::int64_t delta; std::uint64_t t, s; std::int64_t hi; };
  const Shape shapes[] = {{6, 8, 5, 1, 2, 2, 2}, {6, 8, 5, 2, 2, 2, 2}, {4, 16, 4, 1, 2, 4, 1},
                          {5, 12, 5, 3, 3, 2, 2}, {3, 32, 3, 1, 4, 8, 0}};
  for (const Shape& sh : shapes) {
    const IntMatrix a = fill(sh.n1, sh.n2, 0, sh.hi, sh.delta, g);
    const IntMatrix b = fill(sh.n2, sh.n3, 0, sh.hi + 1, 1, g);
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>, std::int64_t> cnt;
    for (std::size_t i = 0; i < sh.n1; ++i)
      for (std::size_t j = 0; j < sh.n3; ++j)
        for (std::size_t k = 0; k < sh.n2; ++k)
          ++cnt[{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), a(i, k) + b(k, j)}];
    const auto keys = top_keys(cnt, 8);
    EstimatorCase c;
    c.name = "triangle " + std::to_string(sh.n1) + "x" + std::to_string(sh.n2) + "x" + std::to_string(sh.n3);
    for (const auto& [k, v] : keys) {
      c.truth.push_back(static_cast<double>(v));
      c.residue.push_back(static_cast<int>(((std::get<2>(k) % sh.delta) + sh.delta) % sh.delta));
      c.group.push_back(static_cast<int>(std::get<0>(k) * 1000 + std::get<1>(k)));
    }
    c.var_bound = 16.0 * static_cast<double>(sh.t * sh.n2);
    c.seeds = 100000;
    auto read = [keys](const TriangleEstimate& f) {
      std::vector<double> r;
      for (const auto& [k, v] : keys) r.push_back(static_cast<double>(f.at(std::get<0>(k), std::get<1>(k), std::get<2>(k))));
      return r;
    };
    c.sample = [=](Rng& rng) { return read(estimate_triangle_counts(a, b, sh.delta, sh.t, sh.s, rng)); };
    c.exact = [=](Rng& rng) { return read(estimate_triangle_counts(a, b, sh.delta, 1, 1, rng)); };
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EstimatorCase> conv_cases() {
  std::vector<EstimatorCase> out;
  Rng g(62);
  struct Shape { std::size_t n; std::int64_t delta; std::uint64_t t; };
  const Shape shapes[] = {{32, 1, 2}, {32, 2, 2}, {48, 1, 4}, {40, 3, 2}, {64, 1, 4}};
  for (const Shape& sh : shapes) {
    const auto a = fill_vec(sh.n, 0, 2, sh.delta, g);
    const auto b = fill_vec(sh.n, 0, 3, 1, g);
    std::map<std::pair<std::uint32_t, std::int64_t>, std::int64_t> cnt;
    for (std::size_t h = 0; h < sh.n; ++h)
      for (std::size_t k = 0; k < h; ++k) ++cnt[{static_cast<std::uint32_t>(h), a[k] + b[h - k]}];
    const auto keys = top_keys(cnt, 8);
    EstimatorCase c;
    c.name = "conv3sum n=" + std::to_string(sh.n);
    for (const auto& [k, v] : keys) {
      c.truth.push_back(static_cast<double>(v));
      c.residue.push_back(static_cast<int>(((k.second % sh.delta) + sh.delta) % sh.delta));
      c.group.push_back(static_cast<int>(k.first));
    }
    c.var_bound = 16.0 * static_cast<double>(sh.t * sh.n);
    auto read = [keys](const Conv3SumEstimate& f) {
      std::vector<double> r;
      for (const auto& [k, v] : keys) r.push_back(static_cast<double>(f.at(k.first, k.second)));
      return r;
    };
    c.sample = [=](Rng& rng) { return read(estimate_conv3sum(a, b, sh.delta, sh.t, rng)); };
    c.exact = [=](Rng& rng) { return read(estimate_conv3sum(a, b, sh.delta, 1, rng)); };
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<EstimatorCase> sum_cases(bool colored) {
  std::vector<EstimatorCase> out;
  Rng g(colored ? 64 : 63);
  struct Shape { std::size_t n; std::int64_t delta; std::uint64_t t; std::int64_t hi; };
  const Shape shapes[] = {{16, 1, 2, 20}, {16, 2, 2, 12}, {20, 1, 4, 30}, {24, 3, 2, 10}, {12, 1, 2, 8}};
  EstimatorOptions sampled;
  sampled.exact_large_colors = false;
  for (const Shape& sh : shapes) {
    const std::size_t na = colored ? 2 * sh.n : sh.n;
    const auto a = fill_vec(na, 0, sh.hi, sh.delta, g);
    const auto b = fill_vec(na, 0, sh.hi * sh.delta, 1, g);
    std::vector<ColoredValue> ca, cb;
    for (auto v : a) ca.push_back({v, static_cast<std::int64_t>(g() % 2)});
    for (auto v : b) cb.push_back({v, static_cast<std::int64_t>(g() % 2)});
    std::map<std::int64_t, std::int64_t> cnt;
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < na; ++y)
        if (!colored || ca[x].color == cb[y].color) ++cnt[a[x] + b[y]];
    const auto keys = top_keys(cnt, 8);
    EstimatorCase c;
    c.name = std::string(colored ? "colored" : "3sum") + " n=" + std::to_string(na);
    for (const auto& [k, v] : keys) {
      c.truth.push_back(static_cast<double>(v));
      c.residue.push_back(static_cast<int>(((k % sh.delta) + sh.delta) % sh.delta));
      c.group.push_back(static_cast<int>(c.group.size()));
    }
    const double lg = std::log2(static_cast<double>(na));
    c.var_bound = 16.0 * lg * lg * static_cast<double>(sh.t * na);
    auto read = [keys](const SumEstimate& f) {
      std::vector<double> r;
      for (const auto& [k, v] : keys) r.push_back(static_cast<double>(f.at(k)));
      return r;
    };
    const std::uint64_t universe = static_cast<std::uint64_t>(sh.hi * sh.delta + 1);
    if (colored) {
      c.sample = [=](Rng& rng) { return read(estimate_colored_3sum(ca, cb, universe, sh.delta, sh.t, rng, sampled)); };
      c.exact = [=](Rng& rng) { return read(estimate_colored_3sum(ca, cb, universe, sh.delta, 1, rng, sampled)); };
    } else {
      c.sample = [=](Rng& rng) { return read(estimate_3sum(a, b, sh.delta, sh.t, rng)); };
      c.exact = [=](Rng& rng) { return read(estimate_3sum(a, b, sh.delta, 1, rng)); };
    }
    out.push_back(std::move(c));
  }
  return out;
}

void estimator_contract(Outcome& o) {
  std::vector<EstimatorCase> cases = triangle_cases();
  for (auto& v : {conv_cases(), sum_cases(false), sum_cases(true)}) cases.insert(cases.end(), v.begin(), v.end());

  // (a) rate-1 exactness: 50 seeded runs spread over the fixed instances,
  // plus 50 fresh random triangle instances checked on every key.
  for (const auto& c : cases)
    for (int r = 0; r < 3; ++r) {
      Rng rng(r);
      if (c.exact(rng) != c.truth) o.fail("(a) " + c.name + " not exact at rate 1");
    }
  Rng g(65);
  for (int inst = 0; inst < 50 && o.pass; ++inst) {
    const IntMatrix a = fill(1 + g() % 6, 1 + g() % 12, -3, 3, 2, g);
    const IntMatrix b = fill(a.cols, 1 + g() % 6, -4, 4, 1, g);
    Rng rng(inst);
    const auto f = estimate_triangle_counts(a, b, 2, 1, 1, rng);
    std::int64_t total = 0;
    for (const auto& e : f.entries) {
      std::int64_t want = 0;
      for (std::size_t k = 0; k < a.cols; ++k) want += a(e.i, k) + b(k, e.j) == e.z;
      if (want != e.value) o.fail("(a) random triangle instance " + std::to_string(inst));
      total += e.value;
    }
    if (total != static_cast<std::int64_t>(a.rows * a.cols * b.cols)) o.fail("(a) lost mass at instance " + std::to_string(inst));
  }

  // (b)-(d): 10^5 seeds per triangle instance, 10^4 for the others.
  std::size_t keys = 0, pairs = 0;
  double worst_var_ratio = 0;
  for (const auto& c : cases) {
    const std::size_t K = c.truth.size();
    const int N = c.seeds;
    std::vector<std::vector<double>> samples(K, std::vector<double>(N));
    for (int r = 0; r < N; ++r) {
      Rng rng(derive_seed(0xac6, static_cast<std::uint64_t>(r)));
      const auto v = c.sample(rng);
      for (std::size_t q = 0; q < K; ++q) samples[q][static_cast<std::size_t>(r)] = v[q];
    }
    for (std::size_t q = 0; q < K; ++q, ++keys) {
      Moments m;
      for (double x : samples[q]) m.add(x);
      if (!within_4se(m, c.truth[q]))
        o.fail("(b) " + c.name + " key " + std::to_string(q) + " mean " + std::to_string(m.mean) + " vs " +
               std::to_string(c.truth[q]));
      worst_var_ratio = std::max(worst_var_ratio, m.var() / c.var_bound);
      if (m.var() > c.var_bound) o.fail("(c) " + c.name + " variance " + std::to_string(m.var()));
    }
    // Up to three pairs per instance with different groups and residues.
    int tested = 0;
    for (std::size_t p = 0; p < K && tested < 3; ++p)
      for (std::size_t q = p + 1; q < K && tested < 3; ++q)
        if (c.group[p] != c.group[q] && c.residue[p] != c.residue[q]) {
          ++tested;
          ++pairs;
          if (!cov_near_zero(samples[p], samples[q])) o.fail("(d) " + c.name + " keys correlated");
        }
  }
  o.note << (o.pass ? "" : "; ") << cases.size() << " instances, " << keys << " keys, " << pairs
         << " residue-separated pairs, max var/bound " << worst_var_ratio;
}

IntervalColoredSet random_intervals(std::uint64_t n, std::size_t count, Rng& rng) {
  std::vector<std::uint64_t> cuts;
  while (cuts.size() < 2 * count) {
    cuts.push_back(rng() % (n + 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  IntervalColoredSet s{{}, n};
  for (std::size_t i = 0; i < count; ++i)
    s.intervals.push_back({cuts[2 * i], cuts[2 * i + 1], static_cast<std::int64_t>(rng() % 4)});
  return s;
}

// AC7
void interval_estimator(Outcome& o) {
  Rng gen(707);
  const std::uint64_t n = 1024, k = 64;
  for (double eps : {0.5, 0.25}) {
    int ok = 0;
    double worst = 0;
    for (int r = 0; r < 100; ++r) {
      const auto a = random_intervals(n, 16 + gen() % 49, gen), b = random_intervals(n, 16 + gen() % 49, gen);
      const auto truth = interval_counts_oracle(a, b);
      Rng rng(derive_seed(707, static_cast<std::uint64_t>(r)));
      const auto est = estimate_interval_counts(a, b, k, eps, rng);
      double err = 0;
      for (std::size_t z = 0; z < truth.size(); ++z) err = std::max(err, std::abs(est[z] - static_cast<double>(truth[z])));
      worst = std::max(worst, err);
      ok += err <= 2 * eps * static_cast<double>(k);
    }
    if (ok < 95) o.fail("eps=" + std::to_string(eps) + " only " + std::to_string(ok) + "/100");
    o.note << (o.pass ? "" : "; ") << "eps=" << eps << ": " << ok << "/100 (worst " << worst << ") ";
  }
}

// AC8
void end_to_end(Outcome& o) {
  Rng gen(808);
  for (double eps : {0.5, 0.25}) {
    int ok = 0;
    double worst = 1;
    for (int r = 0; r < 50; ++r) {
      const IntString t = random_string(1024, 8, gen), p = random_string(256, 8, gen);
      const auto truth = hamming_oracle(t, p);
      ApproxConfig cfg;
      cfg.eps = eps;
      Rng rng(derive_seed(808, static_cast<std::uint64_t>(r)));
      const auto est = approx_hamming(t, p, rng, cfg);
      bool good = true;
      for (std::size_t i = 0; i < est.size(); ++i) {
        const double d = static_cast<double>(truth[i]), e = static_cast<double>(est[i]);
        const double ratio = d == e ? 1.0 : (std::min(d, e) == 0 ? INFINITY : std::max(d / e, e / d));
        worst = std::max(worst, ratio);
        good = good && ratio <= 1 + eps;
      }
      ok += good;
    }
    if (ok < 49) o.fail("eps=" + std::to_string(eps) + " only " + std::to_string(ok) + "/50");
    o.note << (o.pass ? "" : "; ") << "eps=" << eps << ": " << ok << "/50 (worst ratio " << worst << ") ";
  }
}

// AC9
void dominance(Outcome& o) {
  Rng gen(909);
  for (int inst = 0; inst < 500 && o.pass; ++inst) {
    const std::size_t n = 1 + gen() % 2048, m = 1 + gen() % n;
    const std::uint64_t sigma = std::uint64_t{1} << (gen() % 12);
    const IntString t = random_string(n, sigma, gen), p = random_string(m, sigma, gen);
    Rng rng(derive_seed(909, inst));
    const auto d = dominance_counts(t, p, rng);
    if (d != dominance_oracle(t, p)) o.fail("mismatch at instance " + std::to_string(inst));
    if (inst < 100) {
      const auto up = dominance_counts(t.reversed_alphabet(), p.reversed_alphabet(), rng);
      const auto h = hamming_oracle(t, p);
      for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] != d[i] + up[i]) {
          o.fail("identity broken at instance " + std::to_string(inst));
          break;
        }
    }
  }
  if (o.pass) o.note << "500 instances; identity on 100";
}

// AC10
void reductions(Outcome& o) {
  Rng gen(1010);
  for (int inst = 0; inst < 100 && o.pass; ++inst) {
    const std::size_t m = 1 + gen() % 256, n = m + gen() % (3 * m + 1);
    const IntString t = random_string(n, 1 + gen() % 16, gen);
    const IntString p = random_string(m, t.sigma(), gen);
    const auto red = hamming_to_3sum_instance(t, p);
    if (decode_3sum_counts(red, count_3sum_variant_naive(red.instance)) != hamming_oracle(t, p))
      o.fail("forward round trip at instance " + std::to_string(inst));
  }
  for (int inst = 0; inst < 100 && o.pass; ++inst) {
    ThreeSumVariantInstance tv;
    tv.n = 1 + gen() % 128;
    const auto spread = static_cast<std::int64_t>(tv.n * (1 + gen() % 8));
    for (std::uint64_t i = 0; i < tv.n; ++i) {
      tv.a.push_back(static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(2 * spread)) - spread);
      tv.b.push_back(static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(2 * spread)) - spread);
    }
    Rng rng(derive_seed(1010, inst));
    const HammingSolver solver = [&rng](const IntString& t, const IntString& p) { return exact_hamming(t, p, rng); };
    std::vector<std::uint64_t> got;
    try {
      got = solve_3sum_variant_via_hamming(tv, solver, rng);
    } catch (const RetryExhausted&) {
      o.fail("backward reduction gave up at instance " + std::to_string(inst));
      break;
    }
    if (got != count_3sum_variant_naive(tv)) o.fail("backward round trip at instance " + std::to_string(inst));
  }
  for (int inst = 0; inst < 100 && o.pass; ++inst) {
    const std::size_t N = 1 + gen() % 16;
    const IntMatrix a = fill(N, N, 0, 4, 1, gen), b = fill(N, N, 0, 4, 1, gen);
    const auto ep = equality_product_to_hamming(a, b);
    Rng rng(derive_seed(1011, inst));
    if (decode_equality_product(ep, exact_hamming(ep.text, ep.pattern, rng)) != equality_product(a, b, 1 + N / 2))
      o.fail("equality product round trip at instance " + std::to_string(inst));
  }
  if (o.pass) o.note << "3 x 100 round trips";
}

// AC11
void modular_convolution(Outcome& o) {
  std::size_t cases = 0;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    const PrimeWitness w = find_prime(p, p);
    for (std::size_t la = 1; la <= 3; ++la)
      for (std::size_t lb = 1; lb <= 3; ++lb) {
        std::uint64_t ca = 1, cb = 1;
        for (std::size_t i = 0; i < la; ++i) ca *= p;
        for (std::size_t i = 0; i < lb; ++i) cb *= p;
        for (std::uint64_t x = 0; x < ca; ++x)
          for (std::uint64_t y = 0; y < cb; ++y, ++cases) {
            Seq a(la), b(lb);
            for (std::uint64_t v = x, i = 0; i < la; ++i, v /= p) a[i] = v % p;
            for (std::uint64_t v = y, i = 0; i < lb; ++i, v /= p) b[i] = v % p;
            Seq want = convolve_schoolbook(a, b);
            for (auto& c : want) c %= p;
            if (convolve_mod_p(a, b, w) != want) o.fail("exhaustive case differs");
          }
      }
  }
  Rng gen(1111);
  const std::uint64_t primes[] = {2, 3, 257, 65537};
  for (int inst = 0; inst < 200 && o.pass; ++inst) {
    const std::uint64_t p = primes[inst % 4];
    Seq a(4096), b(4096);
    for (auto& x : a) x = gen() % p;
    for (auto& x : b) x = gen() % p;
    Seq want = convolve_exact(a, b);
    for (auto& c : want) c %= p;
    if (convolve_mod_p(a, b, find_prime(p, p)) != want) o.fail("random instance " + std::to_string(inst));
  }
  if (o.pass) o.note << cases << " exhaustive cases, 200 random length-4096";
}

// AC12
void batch_sparse(Outcome& o) {
  Rng gen(1212);
  auto sparse = [&](std::size_t k, std::uint64_t u) {
    SparseBooleanSeq s{{}, u};
    while (s.support.size() < k) {
      s.support.push_back(gen() % u);
      std::sort(s.support.begin(), s.support.end());
      s.support.erase(std::unique(s.support.begin(), s.support.end()), s.support.end());
    }
    return s;
  };
  std::size_t pairs = 0;
  for (int batch = 0; batch < 100 && o.pass; ++batch) {
    std::vector<std::pair<SparseBooleanSeq, SparseBooleanSeq>> in;
    std::size_t left = 512;
    while (left > 0) {
      const std::size_t k = std::min<std::size_t>(left, 2 + gen() % 200);
      const std::size_t kf = std::max<std::size_t>(1, k / 2), kg = std::max<std::size_t>(1, k - kf);
      const std::uint64_t u = 256 + gen() % 4096;
      in.emplace_back(sparse(kf, u), sparse(kg, u));
      left -= std::min(left, kf + kg);
    }
    Rng rng(derive_seed(1212, batch));
    const auto got = batch_sparse_boolean_conv(in, rng);
    for (std::size_t i = 0; i < in.size(); ++i, ++pairs)
      if (got[i] != sparse_conv_schoolbook(in[i].first, in[i].second)) o.fail("batch " + std::to_string(batch));
  }
  if (o.pass) o.note << "100 batches, " << pairs << " pairs";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> only(argv + 1, argv + argc);
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"AC1", exact_randomized},   {"AC2", exact_deterministic}, {"AC3", sumset_kernel},
      {"AC4", hash_soundness},     {"AC5", hash_statistics},     {"AC6", estimator_contract},
      {"AC7", interval_estimator}, {"AC8", end_to_end},          {"AC9", dominance},
      {"AC10", reductions},        {"AC11", modular_convolution}, {"AC12", batch_sparse},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %s (%.1f s) %s\n", name, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.note.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
