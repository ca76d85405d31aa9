#include "hamdist/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

constexpr std::size_t kBlock = 64;
constexpr std::size_t kStrassenCutoff = 64;

void check_dims(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows)
    throw InvalidParameter("inner dimensions differ: " + std::to_string(a.cols) + " vs " +
                           std::to_string(b.rows));
}

IntMatrix blocked(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows, b.cols);
  const auto row_blocks = static_cast<std::int64_t>((a.rows + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(dynamic) if (a.rows * a.cols * b.cols >= (1u << 18))
  for (std::int64_t rb = 0; rb < row_blocks; ++rb) {
    const std::size_t i0 = static_cast<std::size_t>(rb) * kBlock;
    const std::size_t i1 = std::min(a.rows, i0 + kBlock);
    for (std::size_t k0 = 0; k0 < a.cols; k0 += kBlock) {
      const std::size_t k1 = std::min(a.cols, k0 + kBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        std::int64_t* crow = &c.data[i * c.cols];
        for (std::size_t k = k0; k < k1; ++k) {
          const std::int64_t av = a(i, k);
          if (av == 0) continue;
          const std::int64_t* brow = &b.data[k * b.cols];
          for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
        }
      }
    }
  }
  return c;
}

IntMatrix sub_block(const IntMatrix& m, std::size_t r0, std::size_t c0, std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

IntMatrix add(const IntMatrix& x, const IntMatrix& y, std::int64_t sign = 1) {
  IntMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.data.size(); ++i) out.data[i] = x.data[i] + sign * y.data[i];
  return out;
}

// Square, power-of-two sizes only.
IntMatrix strassen_square(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.rows;
  if (n <= kStrassenCutoff) return blocked(a, b);
  const std::size_t h = n / 2;
  const IntMatrix a11 = sub_block(a, 0, 0, h), a12 = sub_block(a, 0, h, h);
  const IntMatrix a21 = sub_block(a, h, 0, h), a22 = sub_block(a, h, h, h);
  const IntMatrix b11 = sub_block(b, 0, 0, h), b12 = sub_block(b, 0, h, h);
  const IntMatrix b21 = sub_block(b, h, 0, h), b22 = sub_block(b, h, h, h);
  const IntMatrix m1 = strassen_square(add(a11, a22), add(b11, b22));
  const IntMatrix m2 = strassen_square(add(a21, a22), b11);
  const IntMatrix m3 = strassen_square(a11, add(b12, b22, -1));
  const IntMatrix m4 = strassen_square(a22, add(b21, b11, -1));
  const IntMatrix m5 = strassen_square(add(a11, a12), b22);
  const IntMatrix m6 = strassen_square(add(a21, a11, -1), add(b11, b12));
  const IntMatrix m7 = strassen_square(add(a12, a22, -1), add(b21, b22));
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      c(i, j) = m1(i, j) + m4(i, j) - m5(i, j) + m7(i, j);
      c(i, j + h) = m3(i, j) + m5(i, j);
      c(i + h, j) = m2(i, j) + m4(i, j);
      c(i + h, j + h) = m1(i, j) - m2(i, j) + m3(i, j) + m6(i, j);
    }
  return c;
}

IntMatrix strassen(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = std::bit_ceil(std::max({a.rows, a.cols, b.cols, std::size_t{1}}));
  if (n <= kStrassenCutoff) return blocked(a, b);
  IntMatrix pa(n, n), pb(n, n);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) pa(i, k) = a(i, k);
  for (std::size_t k = 0; k < b.rows; ++k)
    for (std::size_t j = 0; j < b.cols; ++j) pb(k, j) = b(k, j);
  const IntMatrix pc = strassen_square(pa, pb);
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = pc(i, j);
  return c;
}

}  // namespace

double omega(MatmulBackend backend) {
  return backend == MatmulBackend::strassen ? std::log2(7.0) : 3.0;
}

IntMatrix matmul_naive(const IntMatrix& a, const IntMatrix& b) {
  check_dims(a, b);
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b, MatmulBackend backend) {
  check_dims(a, b);
  return backend == MatmulBackend::strassen ? strassen(a, b) : blocked(a, b);
}

IntMatrix equality_product_naive(const IntMatrix& a, const IntMatrix& b) {
  check_dims(a, b);
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < a.cols; ++k) s += a(i, k) == b(k, j);
      c(i, j) = s;
    }
  return c;
}

IntMatrix equality_product(const IntMatrix& a, const IntMatrix& b, std::size_t r,
                           MatmulBackend backend) {
  check_dims(a, b);
  if (r < 1 || (a.cols > 0 && r > a.cols))
    throw InvalidParameter("r must lie in [1, " + std::to_string(a.cols) + "], got " +
                           std::to_string(r));
  IntMatrix c(a.rows, b.cols);
  if (a.rows == 0 || b.cols == 0) return c;
  const std::size_t heavy_cut = a.rows / r;

  // Indicator columns of the heavy values, built per inner index k.
  std::vector<std::pair<std::size_t, std::size_t>> ind_a;  // (row i, expanded column)
  std::vector<std::pair<std::size_t, std::size_t>> ind_b;  // (expanded row, column j)
  std::size_t expanded = 0;

  std::vector<std::pair<std::int64_t, std::size_t>> col, row;
  for (std::size_t k = 0; k < a.cols; ++k) {
    col.clear();
    row.clear();
    for (std::size_t i = 0; i < a.rows; ++i) col.emplace_back(a(i, k), i);
    for (std::size_t j = 0; j < b.cols; ++j) row.emplace_back(b(k, j), j);
    std::sort(col.begin(), col.end());
    std::sort(row.begin(), row.end());
    std::size_t p = 0, q = 0;
    while (p < col.size() && q < row.size()) {
      if (col[p].first < row[q].first) {
        ++p;
        continue;
      }
      if (row[q].first < col[p].first) {
        ++q;
        continue;
      }
      const std::int64_t v = col[p].first;
      std::size_t pe = p, qe = q;
      while (pe < col.size() && col[pe].first == v) ++pe;
      while (qe < row.size() && row[qe].first == v) ++qe;
      if (pe - p > heavy_cut) {
        for (std::size_t x = p; x < pe; ++x) ind_a.emplace_back(col[x].second, expanded);
        for (std::size_t y = q; y < qe; ++y) ind_b.emplace_back(expanded, row[y].second);
        ++expanded;
      } else {
        for (std::size_t x = p; x < pe; ++x)
          for (std::size_t y = q; y < qe; ++y) ++c(col[x].second, row[y].second);
      }
      p = pe;
      q = qe;
    }
  }
  if (expanded > 0) {
    IntMatrix pa(a.rows, expanded), pb(expanded, b.cols);
    for (const auto& [i, e] : ind_a) pa(i, e) = 1;
    for (const auto& [e, j] : ind_b) pb(e, j) = 1;
    const IntMatrix prod = matmul(pa, pb, backend);
    for (std::size_t x = 0; x < c.data.size(); ++x) c.data[x] += prod.data[x];
  }
  return c;
}

}  // namespace hamdist
