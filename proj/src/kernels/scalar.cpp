#include "dcnewton/kernels.hpp"

namespace dcnewton::kernels {
namespace {

void row_sub_div(double* dst, const double* src, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = (dst[i] - src[i]) / s;
}

void row_div_sub_transposed(double* a, double* b, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = a[i] / s;
    b[i] = b[i] - a[i];
  }
}

void line_divided_differences(double* c, const double* x, std::size_t n) {
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - level]);
    }
  }
}

// Reverse order of the forward elementary steps, each one transposed.
void line_divided_differences_transposed(double* y, const double* x, std::size_t n) {
  for (std::size_t level = n; level-- > 1;) {
    for (std::size_t i = level; i < n; ++i) {
      y[i] = y[i] / (x[i] - x[i - level]);
      y[i - 1] = y[i - 1] - y[i];
    }
  }
}

double contract_strided(const double* coeffs, const RowLayout& layout, const double* tables,
                        const std::size_t* offset, std::size_t stride) {
  double acc = 0.0;
  const std::size_t m = layout.dim;
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    const double* c = coeffs + layout.start[r];
    const std::size_t len = layout.length[r];
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s = s + c[k] * tables[offset[0] + k * stride];
    double w = 1.0;
    for (std::size_t d = 1; d < m; ++d) {
      w = w * tables[offset[d] + static_cast<std::size_t>(layout.exponent(r, d)) * stride];
    }
    acc = acc + w * s;
  }
  return acc;
}

void contract_batch(const double* coeffs, const RowLayout& layout, FactorTables tables, double* out) {
  for (std::size_t lane = 0; lane < kLanes; ++lane) {
    out[lane] = contract_strided(coeffs, layout, tables.values + lane, tables.offset, kLanes);
  }
}

const KernelTable kScalar{
    "scalar",
    row_sub_div,
    row_div_sub_transposed,
    line_divided_differences,
    line_divided_differences_transposed,
    contract_batch,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

double contract_point(const double* coeffs, const RowLayout& layout, const double* tables,
                      const std::size_t* offset) {
  return contract_strided(coeffs, layout, tables, offset, 1);
}

}  // namespace dcnewton::kernels
