#include "dcnewton/layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcnewton {

RowLayout RowLayout::build(const MultiIndexSet& set) {
  RowLayout layout;
  layout.dim = set.dim();
  layout.size = set.size();
  layout.max_exponent.assign(set.dim(), 0);
  if (set.size() >= npos) throw std::invalid_argument("multi-index set too large for row layout");

  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto a = set[k];
    for (std::size_t d = 0; d < set.dim(); ++d) {
      layout.max_exponent[d] = std::max(layout.max_exponent[d], a[d]);
    }
    if (a[0] == 0) {
      layout.start.push_back(static_cast<std::uint32_t>(k));
      layout.length.push_back(0);
      layout.exponents.insert(layout.exponents.end(), a.begin(), a.end());
    }
    ++layout.length.back();
  }

  const std::size_t rows = layout.rows();
  layout.back_row.assign(rows * layout.dim, npos);
  std::vector<int> probe(layout.dim);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t d = 1; d < layout.dim; ++d) {
      if (layout.exponent(r, d) == 0) continue;
      std::copy_n(layout.exponents.begin() + static_cast<std::ptrdiff_t>(r * layout.dim), layout.dim,
                  probe.begin());
      --probe[d];
      const auto pos = set.find(probe);
      // Downward closedness guarantees the neighbour exists and heads a row.
      const auto it = std::lower_bound(layout.start.begin(), layout.start.end(),
                                       static_cast<std::uint32_t>(*pos));
      layout.back_row[r * layout.dim + d] = static_cast<std::uint32_t>(it - layout.start.begin());
    }
  }
  return layout;
}

}  // namespace dcnewton
