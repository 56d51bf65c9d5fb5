#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dcnewton/multi_index.hpp"

namespace dcnewton {

/// Row decomposition of a downward-closed set in canonical order.
///
/// A row is the run of indices sharing alpha_2..alpha_m; since the first
/// coordinate varies fastest and the set is downward closed, every row is
/// contiguous and starts at alpha_1 = 0. For d >= 1 the row reached by
/// decrementing alpha_{d+1} (zero-based coordinate d) is at least as long and
/// aligned element for element, which turns every divided-difference step
/// along a higher dimension into a contiguous vector operation.
struct RowLayout {
  static constexpr std::uint32_t npos = 0xffffffffu;

  std::size_t dim = 0;
  std::size_t size = 0;  // |A|
  std::vector<std::uint32_t> start;
  std::vector<std::uint32_t> length;
  /// rows * dim exponents of each row's first element (alpha_1 = 0).
  std::vector<int> exponents;
  /// rows * dim: row index of (row - e_d), npos when alpha_d == 0. Column 0
  /// is unused.
  std::vector<std::uint32_t> back_row;
  /// max exponent per coordinate
  std::vector<int> max_exponent;

  std::size_t rows() const { return start.size(); }
  int exponent(std::size_t row, std::size_t d) const { return exponents[row * dim + d]; }
  std::uint32_t back(std::size_t row, std::size_t d) const { return back_row[row * dim + d]; }

  static RowLayout build(const MultiIndexSet& set);
};

}  // namespace dcnewton
