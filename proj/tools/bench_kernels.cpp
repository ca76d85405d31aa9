// Serial reference kernels against their OpenMP counterparts.
// Prints CSV: kernel,variant,size,threads,millis

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <vector>

#include "hamdist/convolution.hpp"
#include "hamdist/exact.hpp"
#include "hamdist/matrix.hpp"
#include "hamdist/strings.hpp"

namespace {

template <class F>
double median_millis(int reps, F&& f) {
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void row(const char* kernel, const char* variant, std::size_t size, int threads, double ms) {
  std::cout << kernel << ',' << variant << ',' << size << ',' << threads << ',' << ms << '\n';
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  constexpr int kReps = 3;
  hamdist::Rng rng(2024);
  std::cout << "kernel,variant,size,threads,millis\n";

  for (std::size_t n : {4096u, 16384u}) {
    const auto t = hamdist::random_string(n, 4, rng);
    const auto p = hamdist::random_string(n / 4, 4, rng);
    row("hamming_oracle", "serial", n, 1, median_millis(kReps, [&] { (void)hamdist::hamming_oracle(t, p); }));
    row("hamming_oracle", "openmp", n, threads,
        median_millis(kReps, [&] { (void)hamdist::hamming_oracle_parallel(t, p); }));
    omp_set_num_threads(1);
    row("exact_hamming", "openmp", n, 1, median_millis(kReps, [&] { (void)hamdist::exact_hamming(t, p, rng); }));
    omp_set_num_threads(threads);
    row("exact_hamming", "openmp", n, threads,
        median_millis(kReps, [&] { (void)hamdist::exact_hamming(t, p, rng); }));
  }

  for (std::size_t n : {1024u, 1u << 16}) {
    std::uniform_int_distribution<std::uint64_t> v(0, 1000);
    hamdist::Seq a(n), b(n);
    for (auto& x : a) x = v(rng);
    for (auto& x : b) x = v(rng);
    row("convolution", "schoolbook", n, 1,
        median_millis(kReps, [&] { (void)hamdist::convolve_schoolbook(a, b); }));
    row("convolution", "ntt", n, threads, median_millis(kReps, [&] { (void)hamdist::convolve_exact(a, b); }));
  }

  for (std::size_t n : {128u, 384u}) {
    std::uniform_int_distribution<std::int64_t> v(-8, 8);
    hamdist::IntMatrix a(n, n), b(n, n);
    for (auto& x : a.data) x = v(rng);
    for (auto& x : b.data) x = v(rng);
    row("matmul", "naive", n, 1, median_millis(kReps, [&] { (void)hamdist::matmul_naive(a, b); }));
    row("matmul", "blocked", n, threads,
        median_millis(kReps, [&] { (void)hamdist::matmul(a, b, hamdist::MatmulBackend::blocked); }));
    row("matmul", "strassen", n, threads,
        median_millis(kReps, [&] { (void)hamdist::matmul(a, b, hamdist::MatmulBackend::strassen); }));
    row("equality_product", "naive", n, 1,
        median_millis(kReps, [&] { (void)hamdist::equality_product_naive(a, b); }));
    row("equality_product", "split", n, threads,
        median_millis(kReps, [&] { (void)hamdist::equality_product(a, b, 4); }));
  }
  return 0;
}
