#include "hamdist/primes.hpp"

#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes as bases decide every n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeWitness find_prime(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2 || lo > hi)
    throw InvalidParameter("find_prime needs 2 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  for (std::uint64_t x = lo;; ++x) {
    if (is_prime(x)) return PrimeWitness{x, lo, hi};
    if (x == hi) break;
  }
  throw NotFound("no prime in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::uint64_t next_prime(std::uint64_t lo) {
  std::uint64_t x = lo < 2 ? 2 : lo;
  while (!is_prime(x)) ++x;
  return x;
}

}  // namespace hamdist
