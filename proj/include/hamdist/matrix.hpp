#pragma once

#include <cstdint>
#include <vector>

namespace hamdist {

// Dense row-major integer matrix.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c, std::int64_t fill = 0) : rows(r), cols(c), data(r * c, fill) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

enum class MatmulBackend { blocked, strassen };

// Exponent used by parameter formulas: 3 for blocked, log2 7 for Strassen.
double omega(MatmulBackend backend);

// Serial triple loop.
IntMatrix matmul_naive(const IntMatrix& a, const IntMatrix& b);

// Exact product; rows are split across OpenMP threads. Throws
// InvalidParameter on a dimension mismatch.
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b,
                 MatmulBackend backend = MatmulBackend::blocked);

// C[i][j] = |{k : A[i][k] = B[k][j]}| by a triple loop.
IntMatrix equality_product_naive(const IntMatrix& a, const IntMatrix& b);

// Same counts. For every inner index k, values occurring more than rows/r
// times in column k of A go through a 0/1 indicator product; the rest are
// enumerated pair by pair. Throws InvalidParameter unless 1 <= r <= cols(A).
IntMatrix equality_product(const IntMatrix& a, const IntMatrix& b, std::size_t r,
                           MatmulBackend backend = MatmulBackend::blocked);

}  // namespace hamdist
