#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dcnewton/layout.hpp"
#include "dcnewton/multi_index.hpp"

namespace dcnewton {

enum class NodeFamily { chebyshev_lobatto, leja_ordered_chebyshev_lobatto, leja, custom };

std::string to_string(NodeFamily family);
NodeFamily parse_node_family(const std::string& text);

/// Ordered 1D node tuple in [-1, 1]; position j holds p_j.
struct Nodes1D {
  std::vector<double> points;
  NodeFamily family = NodeFamily::custom;

  std::size_t size() const { return points.size(); }
  double operator[](std::size_t j) const { return points[j]; }
};

/// cos(k pi / n), k = 0..n, natural order; n = 0 gives {1}. The middle node
/// of an even n is exactly 0.
Nodes1D chebyshev_lobatto(int n);

/// Greedy Leja ordering: |p_0| maximal, then each p_l maximises the product
/// of distances to p_0..p_{l-1}. Ties go to the numerically largest point.
Nodes1D leja_order(const Nodes1D& nodes);

/// Continuum Leja points on [-1, 1] with p_0 = 1. Each step scans a
/// Chebyshev-distributed candidate grid of `resolution` points, then refines
/// each gap between chosen points exactly. Requires resolution >= 10 (n + 1).
Nodes1D leja_points(int n, int resolution = 100000);

/// The grid P_A = { (p_{alpha_1,1}, ..., p_{alpha_m,m}) : alpha in A },
/// unisolvent for Pi_A. Immutable; shared between polynomials built on it.
class UnisolventGrid {
 public:
  /// Rejects undersized axes, duplicate points within an axis and points
  /// outside [-1, 1].
  static std::shared_ptr<const UnisolventGrid> build(MultiIndexSet set, std::vector<Nodes1D> axes);

  const MultiIndexSet& index_set() const { return set_; }
  const std::vector<Nodes1D>& axes() const { return axes_; }
  const RowLayout& layout() const { return layout_; }
  std::size_t dim() const { return set_.dim(); }
  std::size_t size() const { return set_.size(); }

  /// Coordinate i of node(alpha) for the index at canonical position k.
  double coordinate(std::size_t k, std::size_t i) const {
    return axes_[i].points[static_cast<std::size_t>(set_.exponent(k, i))];
  }
  std::vector<double> node(std::size_t k) const;

 private:
  UnisolventGrid(MultiIndexSet set, std::vector<Nodes1D> axes);

  MultiIndexSet set_;
  std::vector<Nodes1D> axes_;
  RowLayout layout_;
};

using GridPtr = std::shared_ptr<const UnisolventGrid>;

inline GridPtr build_grid(MultiIndexSet set, std::vector<Nodes1D> axes) {
  return UnisolventGrid::build(std::move(set), std::move(axes));
}

/// Grid on A_{m,n,p} with identical axes of the given family on every
/// coordinate (Leja-ordered Chebyshev-Lobatto or Leja points).
GridPtr make_lp_grid(std::size_t m, int n, LpDegree p, NodeFamily family, int leja_resolution = 100000);

/// Options for the dense Vandermonde oracle.
struct UnisolvenceCheck {
  std::size_t max_size = 600;
  double relative_threshold = 1e-10;
};

/// Builds the |A| x |A| monomial Vandermonde matrix node(alpha)^beta and
/// reports whether its smallest singular value exceeds the relative
/// threshold. O(|A|^3); rejects sets above the size cap.
bool vandermonde_unisolvence_check(const UnisolventGrid& grid, const UnisolvenceCheck& options = {});

/// Same oracle on raw axes, which may contain duplicates.
bool vandermonde_unisolvence_check(const MultiIndexSet& set, const std::vector<std::vector<double>>& axes,
                                   const UnisolvenceCheck& options = {});

/// CSV with header a1..am,x1..xm in canonical order.
std::string to_csv(const UnisolventGrid& grid);

}  // namespace dcnewton
