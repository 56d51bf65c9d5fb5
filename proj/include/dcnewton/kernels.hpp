#pragma once

#include <cstddef>
#include <string_view>

#include "dcnewton/layout.hpp"

namespace dcnewton::kernels {

/// Number of query points one batched contraction handles.
inline constexpr std::size_t kLanes = 4;

/// Per-dimension factor tables for a batch of kLanes points, interleaved as
/// tables[offset[d] + k * kLanes + lane] = T_d(k) at that lane's point.
struct FactorTables {
  const double* values = nullptr;
  const std::size_t* offset = nullptr;
};

/// The data-parallel inner loops of the Newton machinery. Every variant must
/// produce bitwise-identical results to the scalar reference: same operation
/// order per element, divisions kept as divisions, no fused multiply-add.
struct KernelTable {
  std::string_view name;

  /// dst[i] = (dst[i] - src[i]) / s for i < n. One divided-difference level
  /// applied to a whole row along a higher dimension.
  void (*row_sub_div)(double* dst, const double* src, std::size_t n, double s);

  /// Transpose of row_sub_div: a[i] = a[i] / s; b[i] = b[i] - a[i].
  void (*row_div_sub_transposed)(double* a, double* b, std::size_t n, double s);

  /// In-place 1D Newton divided differences of c[0..n) on nodes x[0..n).
  void (*line_divided_differences)(double* c, const double* x, std::size_t n);

  /// Transpose of line_divided_differences.
  void (*line_divided_differences_transposed)(double* y, const double* x, std::size_t n);

  /// out[lane] = sum over rows r of (prod_{d>=1} T_d(alpha_{r,d})) *
  /// (sum_k c[start_r + k] * T_0(k)) for each of the kLanes points.
  void (*contract_batch)(const double* coeffs, const RowLayout& layout, FactorTables tables, double* out);
};

const KernelTable& scalar();

/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2();

/// AVX2 when available, scalar otherwise. DCNEWTON_KERNELS=scalar in the
/// environment forces the reference path.
const KernelTable& active();

/// Single-point contraction on the scalar path; tables[offset[d] + k].
double contract_point(const double* coeffs, const RowLayout& layout, const double* tables,
                      const std::size_t* offset);

}  // namespace dcnewton::kernels
