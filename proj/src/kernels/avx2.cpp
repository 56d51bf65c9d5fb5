// Compiled with -mavx2 only; selected at runtime by dispatch.cpp.
#include <immintrin.h>

#include "dcnewton/kernels.hpp"

namespace dcnewton::kernels {
namespace {

void row_sub_div(double* dst, const double* src, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    const __m256d v = _mm256_loadu_pd(src + i);
    _mm256_storeu_pd(dst + i, _mm256_div_pd(_mm256_sub_pd(d, v), vs));
  }
  for (; i < n; ++i) dst[i] = (dst[i] - src[i]) / s;
}

void row_div_sub_transposed(double* a, double* b, std::size_t n, double s) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_div_pd(_mm256_loadu_pd(a + i), vs);
    _mm256_storeu_pd(a + i, va);
    _mm256_storeu_pd(b + i, _mm256_sub_pd(_mm256_loadu_pd(b + i), va));
  }
  for (; i < n; ++i) {
    a[i] = a[i] / s;
    b[i] = b[i] - a[i];
  }
}

// Within a level every c[i] depends on the old c[i] and c[i-1] only, so
// descending blocks of four can load both operands before storing.
void line_divided_differences(double* c, const double* x, std::size_t n) {
  for (std::size_t level = 1; level < n; ++level) {
    std::size_t i = n - 1;
    while (i >= level + 3) {
      const __m256d cur = _mm256_loadu_pd(c + i - 3);
      const __m256d prev = _mm256_loadu_pd(c + i - 4);
      const __m256d xi = _mm256_loadu_pd(x + i - 3);
      const __m256d xj = _mm256_loadu_pd(x + i - 3 - level);
      _mm256_storeu_pd(c + i - 3, _mm256_div_pd(_mm256_sub_pd(cur, prev), _mm256_sub_pd(xi, xj)));
      i -= 4;
    }
    for (; i >= level; --i) c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - level]);
  }
}

// Sequential form: y[i] /= s_i; y[i-1] -= y[i] for ascending i. Equivalently
// with t_i = y_i / s_i: y[level-1] -= t_level, y[i] = t_i - t_{i+1}, and
// y[n-1] = t_{n-1}.
void line_divided_differences_transposed(double* y, const double* x, std::size_t n) {
  for (std::size_t level = n; level-- > 1;) {
    y[level - 1] = y[level - 1] - y[level] / (x[level] - x[0]);
    std::size_t i = level;
    for (; i + 4 < n; i += 4) {
      const __m256d s0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(x + i - level));
      const __m256d s1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i + 1 - level));
      const __m256d t0 = _mm256_div_pd(_mm256_loadu_pd(y + i), s0);
      const __m256d t1 = _mm256_div_pd(_mm256_loadu_pd(y + i + 1), s1);
      _mm256_storeu_pd(y + i, _mm256_sub_pd(t0, t1));
    }
    for (; i + 1 < n; ++i) {
      const double t0 = y[i] / (x[i] - x[i - level]);
      const double t1 = y[i + 1] / (x[i + 1] - x[i + 1 - level]);
      y[i] = t0 - t1;
    }
    y[n - 1] = y[n - 1] / (x[n - 1] - x[n - 1 - level]);
  }
}

void contract_batch(const double* coeffs, const RowLayout& layout, FactorTables tables, double* out) {
  const std::size_t m = layout.dim;
  const double* t0 = tables.values + tables.offset[0];
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    const double* c = coeffs + layout.start[r];
    const std::size_t len = layout.length[r];
    __m256d s = _mm256_setzero_pd();
    for (std::size_t k = 0; k < len; ++k) {
      s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(c[k]), _mm256_loadu_pd(t0 + k * kLanes)));
    }
    __m256d w = _mm256_set1_pd(1.0);
    for (std::size_t d = 1; d < m; ++d) {
      const double* td = tables.values + tables.offset[d];
      w = _mm256_mul_pd(w, _mm256_loadu_pd(td + static_cast<std::size_t>(layout.exponent(r, d)) * kLanes));
    }
    acc = _mm256_add_pd(acc, _mm256_mul_pd(w, s));
  }
  _mm256_storeu_pd(out, acc);
}

const KernelTable kAvx2{
    "avx2",
    row_sub_div,
    row_div_sub_transposed,
    line_divided_differences,
    line_divided_differences_transposed,
    contract_batch,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace dcnewton::kernels
