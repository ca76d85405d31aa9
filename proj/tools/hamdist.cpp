#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hamdist/approx_hamming.hpp"
#include "hamdist/error.hpp"
#include "hamdist/exact.hpp"
#include "hamdist/io.hpp"
#include "hamdist/reductions.hpp"
#include "hamdist/sumset.hpp"

namespace {

using hamdist::DistanceVector;
using hamdist::IntString;
using hamdist::Rng;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInvalid = 2;

struct Config {
  std::string algo = "exact";
  std::string text;
  std::string pattern;
  std::string out;
  double eps = 0.5;
  std::uint64_t k = 0;
  std::uint64_t seed = 1;
  bool ints = false;
  std::size_t trials = 10;
  std::size_t bench_reps = 3;
  std::size_t n = 1024;
  std::size_t m = 0;
  std::uint64_t sigma = 16;
  std::string grid = "4096,8192,16384,32768,65536";
  std::string kind = "random";
};

const std::vector<std::string> kAlgos = {"naive", "fft", "abrahamson", "exact", "exact-det", "approx", "dom"};

IntString load(const std::string& path, bool ints) {
  if (path.empty()) throw hamdist::InvalidInstance("missing input path");
  return ints ? hamdist::read_ints_file(path) : hamdist::read_bytes_file(path);
}

DistanceVector run_algo(const std::string& algo, const IntString& t, const IntString& p, Rng& rng,
                        const Config& cfg) {
  if (algo == "naive") return hamdist::hamming_oracle_parallel(t, p);
  if (algo == "fft") return hamdist::fft_hamming(t, p);
  if (algo == "abrahamson") return hamdist::abrahamson_hamming(t, p);
  if (algo == "exact") return hamdist::exact_hamming(t, p, rng);
  if (algo == "exact-det") return hamdist::exact_hamming_det(t, p);
  if (algo == "dom") return hamdist::dominance_counts(t, p, rng);
  if (algo == "approx") {
    if (cfg.k > 0) return hamdist::approx_hamming_k(t, p, cfg.k, cfg.eps, rng);
    hamdist::ApproxConfig ac;
    ac.eps = cfg.eps;
    return hamdist::approx_hamming(t, p, rng, ac);
  }
  throw hamdist::InvalidParameter("unknown algorithm " + algo);
}

void emit(const Config& cfg, const DistanceVector& d) {
  if (cfg.out.empty()) {
    hamdist::write_distance_csv(std::cout, d);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw hamdist::IoError("cannot write " + cfg.out);
  hamdist::write_distance_csv(f, d);
}

int cmd_dist(const Config& cfg) {
  const IntString t = load(cfg.text, cfg.ints), p = load(cfg.pattern, cfg.ints);
  Rng rng(cfg.seed);
  emit(cfg, run_algo(cfg.algo, t, p, rng, cfg));
  return kOk;
}

int cmd_dom(const Config& cfg) {
  const IntString t = load(cfg.text, cfg.ints), p = load(cfg.pattern, cfg.ints);
  Rng rng(cfg.seed);
  emit(cfg, hamdist::dominance_counts(t, p, rng));
  return kOk;
}

int cmd_approx(const Config& cfg) {
  const IntString t = load(cfg.text, cfg.ints), p = load(cfg.pattern, cfg.ints);
  Rng rng(cfg.seed);
  emit(cfg, run_algo("approx", t, p, rng, cfg));
  return kOk;
}

std::size_t pattern_len(const Config& cfg) {
  const std::size_t m = cfg.m == 0 ? std::max<std::size_t>(1, cfg.n / 4) : cfg.m;
  if (m > cfg.n) throw hamdist::InvalidInstance("m exceeds n");
  return m;
}

int cmd_gen(const Config& cfg) {
  if (cfg.out.empty()) throw hamdist::InvalidParameter("gen needs --out PREFIX");
  Rng rng(cfg.seed);
  IntString t, p;
  if (cfg.kind == "random") {
    t = hamdist::random_string(cfg.n, cfg.sigma, rng);
    p = hamdist::random_string(pattern_len(cfg), cfg.sigma, rng);
  } else if (cfg.kind == "equality-product") {
    // --n is the matrix dimension, --sigma the value range.
    hamdist::IntMatrix a(cfg.n, cfg.n), b(cfg.n, cfg.n);
    std::uniform_int_distribution<std::int64_t> v(0, static_cast<std::int64_t>(cfg.sigma) - 1);
    for (auto& x : a.data) x = v(rng);
    for (auto& x : b.data) x = v(rng);
    const auto inst = hamdist::equality_product_to_hamming(a, b);
    t = inst.text;
    p = inst.pattern;
  } else {
    throw hamdist::InvalidParameter("unknown --kind " + cfg.kind);
  }
  const bool ints = cfg.ints || t.sigma() > 256 || p.sigma() > 256;
  auto write = ints ? hamdist::write_ints_file : hamdist::write_bytes_file;
  write(cfg.out + ".text", t);
  write(cfg.out + ".pattern", p);
  std::cerr << "wrote " << cfg.out << ".text and " << cfg.out << ".pattern ("
            << (ints ? "ints" : "bytes") << ")\n";
  return kOk;
}

bool within_factor(std::uint64_t est, std::uint64_t truth, double eps) {
  const double e = static_cast<double>(est), d = static_cast<double>(truth);
  return e <= (1.0 + eps) * d + 1e-9 && d <= (1.0 + eps) * e + 1e-9;
}

int cmd_verify(const Config& cfg) {
  if (cfg.trials == 0) throw hamdist::InvalidParameter("--trials must be positive");
  const std::size_t m = pattern_len(cfg);
  std::vector<std::size_t> failed;
  double worst = 1.0;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const std::uint64_t instance_seed = hamdist::derive_seed(cfg.seed, i);
    Rng rng(instance_seed);
    const IntString t = hamdist::random_string(cfg.n, cfg.sigma, rng);
    const IntString p = hamdist::random_string(m, cfg.sigma, rng);
    const DistanceVector got = run_algo(cfg.algo, t, p, rng, cfg);
    const DistanceVector want =
        cfg.algo == "dom" ? hamdist::dominance_oracle(t, p) : hamdist::hamming_oracle_parallel(t, p);
    bool ok = got.size() == want.size();
    for (std::size_t s = 0; ok && s < want.size(); ++s) {
      if (cfg.algo == "approx") {
        ok = within_factor(got[s], want[s], cfg.eps);
        if (want[s] > 0 && got[s] > 0) {
          const double r = static_cast<double>(std::max(got[s], want[s])) /
                           static_cast<double>(std::min(got[s], want[s]));
          worst = std::max(worst, r);
        }
      } else {
        ok = got[s] == want[s];
      }
    }
    if (!ok) failed.push_back(i);
  }
  // Approximation is checked against the 49-of-50 budget, everything else exactly.
  const std::size_t allowed = cfg.algo == "approx" ? cfg.trials / 50 : 0;
  std::cout << "algo=" << cfg.algo << " trials=" << cfg.trials << " n=" << cfg.n << " m=" << m
            << " sigma=" << cfg.sigma << " failures=" << failed.size() << "\n";
  if (cfg.algo == "approx")
    std::cout << "eps=" << cfg.eps << " worst_ratio=" << worst << " allowed_failures=" << allowed
              << "\n";
  for (std::size_t i : failed)
    std::cout << "failed instance " << i << " seed=" << hamdist::derive_seed(cfg.seed, i) << "\n";
  return failed.size() <= allowed ? kOk : kVerifyFailed;
}

std::vector<std::size_t> parse_grid(const std::string& grid) {
  std::vector<std::size_t> out;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(item, &pos);
    if (pos != item.size() || v == 0) throw hamdist::InvalidParameter("bad grid entry " + item);
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw hamdist::InvalidParameter("empty grid");
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
double median_millis(std::size_t reps, F&& f) {
  std::vector<double> times;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

// Largest sumset universe the bench allocates.
constexpr std::uint64_t kBenchMaxUniverse = std::uint64_t{1} << 24;

int cmd_bench(const Config& cfg) {
  const std::vector<std::size_t> grid = parse_grid(cfg.grid);
  const std::size_t reps = std::max<std::size_t>(1, cfg.bench_reps);
  std::ostringstream csv;
  csv << "algo,n,m,sigma,millis\n";
  auto row = [&](const std::string& algo, std::size_t n, std::size_t m, double ms) {
    csv << algo << ',' << n << ',' << m << ',' << cfg.sigma << ',' << ms << '\n';
  };
  for (std::size_t n : grid) {
    const std::size_t m = cfg.m == 0 ? std::max<std::size_t>(1, n / 4) : std::min(cfg.m, n);
    Rng rng(hamdist::derive_seed(cfg.seed, n));
    const IntString t = hamdist::random_string(n, cfg.sigma, rng);
    const IntString p = hamdist::random_string(m, cfg.sigma, rng);
    const std::vector<std::string> algos =
        cfg.algo == "all" ? std::vector<std::string>{"naive", "fft", "abrahamson", "exact", "exact-det"}
                          : std::vector<std::string>{cfg.algo};
    for (const std::string& algo : algos)
      row(algo, n, m, median_millis(reps, [&] { (void)run_algo(algo, t, p, rng, cfg); }));

    for (std::uint64_t universe : {std::bit_ceil<std::uint64_t>(n), std::bit_ceil<std::uint64_t>(n) * n / 4}) {
      if (universe < 4 || universe > kBenchMaxUniverse) continue;
      const std::size_t size = std::min<std::size_t>(n, universe / 2);
      std::uniform_int_distribution<std::uint64_t> pick(0, universe / 2 - 1);
      std::vector<std::uint64_t> xs(size), ys(size);
      for (auto& x : xs) x = pick(rng);
      for (auto& y : ys) y = pick(rng);
      const std::string tag = "@U=" + std::to_string(universe);
      row("sumset-lv" + tag, n, size,
          median_millis(reps, [&] { (void)hamdist::sumset_counts(xs, ys, universe, rng); }));
      row("sumset-conv" + tag, n, size,
          median_millis(reps, [&] { (void)hamdist::sumset_counts_conv(xs, ys, universe); }));
    }
  }
  if (cfg.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw hamdist::IoError("cannot write " + cfg.out);
    f << csv.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-to-pattern Hamming distances"};
  app.require_subcommand(1);
  Config cfg;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--text", cfg.text, "Text file");
    sub->add_option("--pattern", cfg.pattern, "Pattern file");
    sub->add_flag("--ints", cfg.ints, "Inputs are whitespace-separated integer codes");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
  };
  auto add_algo = [&](CLI::App* sub) {
    sub->add_option("--algo", cfg.algo, "naive|fft|abrahamson|exact|exact-det|approx|dom")
        ->check(CLI::IsMember(kAlgos));
  };
  auto add_approx = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "Approximation parameter in (0, 1]");
    sub->add_option("--k", cfg.k, "Run-length bound; selects the additive-error driver");
  };
  auto add_gen = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Text length");
    sub->add_option("--m", cfg.m, "Pattern length (default n/4)");
    sub->add_option("--sigma", cfg.sigma, "Alphabet size")->check(CLI::PositiveNumber);
  };

  CLI::App* dist = app.add_subcommand("dist", "Distances for one text/pattern pair");
  add_io(dist);
  add_algo(dist);
  add_approx(dist);
  CLI::App* dom = app.add_subcommand("dom", "Dominance counts |{j : P[j] < T[i+j]}|");
  add_io(dom);
  CLI::App* approx = app.add_subcommand("approx", "(1+eps)-approximate distances");
  add_io(approx);
  add_approx(approx);
  CLI::App* gen = app.add_subcommand("gen", "Write a generated instance to PREFIX.text/.pattern");
  gen->add_option("--kind", cfg.kind, "random|equality-product");
  gen->add_option("--seed", cfg.seed, "RNG seed");
  gen->add_option("--out", cfg.out, "Output prefix");
  gen->add_flag("--ints", cfg.ints, "Write integer codes");
  add_gen(gen);
  CLI::App* verify = app.add_subcommand("verify", "Check an algorithm against the oracle");
  add_algo(verify);
  add_approx(verify);
  add_gen(verify);
  verify->add_option("--trials", cfg.trials, "Number of generated instances");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  CLI::App* bench = app.add_subcommand("bench", "Timing table over a size grid");
  bench->add_option("--algo", cfg.algo, "Algorithm or 'all'");
  bench->add_option("--grid", cfg.grid, "Comma-separated text lengths");
  bench->add_option("--m", cfg.m, "Pattern length (default n/4)");
  bench->add_option("--sigma", cfg.sigma, "Alphabet size")->check(CLI::PositiveNumber);
  bench->add_option("--trials", cfg.bench_reps, "Repetitions per row (median reported)");
  bench->add_option("--seed", cfg.seed, "RNG seed");
  bench->add_option("--out", cfg.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*dist) return cmd_dist(cfg);
    if (*dom) return cmd_dom(cfg);
    if (*approx) return cmd_approx(cfg);
    if (*gen) return cmd_gen(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bench) {
      if (cfg.algo == "exact" && bench->count("--algo") == 0) cfg.algo = "all";
      return cmd_bench(cfg);
    }
  } catch (const hamdist::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
