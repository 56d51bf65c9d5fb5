#include "dcnewton/grid.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dcnewton/io.hpp"

namespace dcnewton {

std::string to_string(NodeFamily family) {
  switch (family) {
    case NodeFamily::chebyshev_lobatto: return "chebyshev_lobatto";
    case NodeFamily::leja_ordered_chebyshev_lobatto: return "lcl";
    case NodeFamily::leja: return "leja";
    case NodeFamily::custom: return "custom";
  }
  return "custom";
}

NodeFamily parse_node_family(const std::string& text) {
  if (text == "lcl" || text == "leja_ordered_chebyshev_lobatto") return NodeFamily::leja_ordered_chebyshev_lobatto;
  if (text == "leja" || text == "lp") return NodeFamily::leja;
  if (text == "chebyshev_lobatto" || text == "cheb") return NodeFamily::chebyshev_lobatto;
  if (text == "custom") return NodeFamily::custom;
  throw std::invalid_argument("unknown node family '" + text + "' (expected lcl or leja)");
}

Nodes1D chebyshev_lobatto(int n) {
  if (n < 0) throw std::invalid_argument("chebyshev_lobatto: n must be >= 0");
  Nodes1D nodes;
  nodes.family = NodeFamily::chebyshev_lobatto;
  if (n == 0) {
    nodes.points = {1.0};
    return nodes;
  }
  nodes.points.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    nodes.points[static_cast<std::size_t>(k)] = std::cos(k * std::numbers::pi / n);
  }
  if (n % 2 == 0) nodes.points[static_cast<std::size_t>(n / 2)] = 0.0;
  nodes.points.back() = -1.0;
  return nodes;
}

namespace {

constexpr double kTieTolerance = 1e-12;

bool ties(double score, double best) {
  return std::abs(score - best) <= kTieTolerance * std::max(1.0, std::abs(best));
}

// Argmax over scores with the tie-break toward the numerically largest point,
// applied after the full scan so the result does not depend on scan order.
std::size_t pick(const std::vector<double>& scores, const std::vector<double>& points,
                 const std::vector<char>& taken) {
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (taken[k]) continue;
    if (!found || scores[k] > best) {
      best = scores[k];
      found = true;
    }
  }
  std::size_t winner = scores.size();
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (taken[k]) continue;
    const bool tied = std::isinf(best) ? scores[k] == best : ties(scores[k], best);
    if (tied && (winner == scores.size() || points[k] > points[winner])) winner = k;
  }
  return winner;
}

double log_distance_sum(double x, const std::vector<double>& chosen) {
  double s = 0.0;
  for (double p : chosen) s += std::log(std::abs(x - p));
  return s;
}

}  // namespace

Nodes1D leja_order(const Nodes1D& nodes) {
  const auto& pts = nodes.points;
  const std::size_t n = pts.size();
  Nodes1D out;
  out.family = nodes.family == NodeFamily::chebyshev_lobatto ? NodeFamily::leja_ordered_chebyshev_lobatto
                                                             : nodes.family;
  if (n == 0) return out;
  out.points.reserve(n);

  std::vector<char> taken(n, 0);
  std::vector<double> scores(n);
  for (std::size_t k = 0; k < n; ++k) scores[k] = std::abs(pts[k]);
  std::size_t next = pick(scores, pts, taken);
  std::fill(scores.begin(), scores.end(), 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    taken[next] = 1;
    const double chosen = pts[next];
    out.points.push_back(chosen);
    if (l + 1 == n) break;
    for (std::size_t k = 0; k < n; ++k) {
      if (!taken[k]) scores[k] += std::log(std::abs(pts[k] - chosen));
    }
    next = pick(scores, pts, taken);
  }
  return out;
}

Nodes1D leja_points(int n, int resolution) {
  if (n < 0) throw std::invalid_argument("leja_points: n must be >= 0");
  if (resolution < 10 * (n + 1)) throw std::invalid_argument("leja_points: resolution must be >= 10 (n + 1)");

  const std::vector<double> cand = chebyshev_lobatto(resolution - 1).points;  // descending
  const std::size_t r = cand.size();
  std::vector<double> chosen{1.0};
  std::vector<double> scores(r, 0.0);
  std::vector<char> taken(r, 0);
  taken[0] = 1;  // cand[0] == 1

  for (int l = 1; l <= n; ++l) {
    const double last = chosen.back();
    for (std::size_t k = 0; k < r; ++k) {
      if (cand[k] == last) taken[k] = 1;
      if (!taken[k]) scores[k] += std::log(std::abs(cand[k] - last));
    }
    const std::size_t best = pick(scores, cand, taken);
    double next = cand[best];
    double next_score = scores[best];

    // Between consecutive chosen points the log product is strictly concave,
    // so its maximiser is the unique root of g(p) = sum_j 1/(p - p_j), found
    // by bisection to full precision. Every gap is refined so that mirror
    // images are compared on exact scores before the tie-break.
    std::vector<double> sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    const auto g = [&](double p) {
      double s = 0.0;
      for (double q : chosen) s += 1.0 / (p - q);
      return s;
    };
    const auto consider = [&](double p) {
      const double score = log_distance_sum(p, chosen);
      if (ties(score, next_score) ? p > next : score > next_score) {
        next = p;
        next_score = score;
      }
    };
    const auto root = [&](double lo, double hi) {
      for (;;) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        (g(mid) > 0.0 ? lo : hi) = mid;
      }
    };
    if (sorted.front() > -1.0) consider(g(-1.0) <= 0.0 ? -1.0 : root(-1.0, sorted.front()));
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) consider(root(sorted[k], sorted[k + 1]));
    chosen.push_back(next);
  }
  Nodes1D out;
  out.points = std::move(chosen);
  out.family = NodeFamily::leja;
  return out;
}

UnisolventGrid::UnisolventGrid(MultiIndexSet set, std::vector<Nodes1D> axes)
    : set_(std::move(set)), axes_(std::move(axes)), layout_(RowLayout::build(set_)) {}

std::shared_ptr<const UnisolventGrid> UnisolventGrid::build(MultiIndexSet set, std::vector<Nodes1D> axes) {
  if (axes.size() != set.dim()) {
    throw std::invalid_argument("build_grid: expected " + std::to_string(set.dim()) + " axes, got " +
                                std::to_string(axes.size()));
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const auto& pts = axes[i].points;
    const auto needed = static_cast<std::size_t>(max_exponent(set, i)) + 1;
    if (pts.size() < needed) {
      throw std::invalid_argument("build_grid: axis " + std::to_string(i + 1) + " has " +
                                  std::to_string(pts.size()) + " points, needs " + std::to_string(needed));
    }
    for (double p : pts) {
      if (!std::isfinite(p) || p < -1.0 || p > 1.0) {
        throw std::invalid_argument("build_grid: axis " + std::to_string(i + 1) + " has a point outside [-1,1]");
      }
    }
    std::vector<double> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("build_grid: axis " + std::to_string(i + 1) + " has duplicate points");
    }
  }
  return std::shared_ptr<const UnisolventGrid>(new UnisolventGrid(std::move(set), std::move(axes)));
}

std::vector<double> UnisolventGrid::node(std::size_t k) const {
  std::vector<double> x(dim());
  for (std::size_t i = 0; i < dim(); ++i) x[i] = coordinate(k, i);
  return x;
}

GridPtr make_lp_grid(std::size_t m, int n, LpDegree p, NodeFamily family, int leja_resolution) {
  MultiIndexSet set = make_lp_set(m, n, p);
  Nodes1D axis;
  switch (family) {
    case NodeFamily::leja_ordered_chebyshev_lobatto: axis = leja_order(chebyshev_lobatto(n)); break;
    case NodeFamily::leja: axis = leja_points(n, leja_resolution); break;
    case NodeFamily::chebyshev_lobatto: axis = chebyshev_lobatto(n); break;
    case NodeFamily::custom: throw std::invalid_argument("make_lp_grid: custom axes must be built explicitly");
  }
  return build_grid(std::move(set), std::vector<Nodes1D>(m, axis));
}

bool vandermonde_unisolvence_check(const MultiIndexSet& set, const std::vector<std::vector<double>>& axes,
                                   const UnisolvenceCheck& options) {
  const std::size_t n = set.size();
  if (n > options.max_size) {
    throw std::invalid_argument("unisolvence oracle: |A| = " + std::to_string(n) + " exceeds cap " +
                                std::to_string(options.max_size));
  }
  if (axes.size() != set.dim()) throw std::invalid_argument("unisolvence oracle: axis count mismatch");
  for (std::size_t i = 0; i < set.dim(); ++i) {
    if (axes[i].size() < static_cast<std::size_t>(max_exponent(set, i)) + 1) {
      throw std::invalid_argument("unisolvence oracle: undersized axis");
    }
  }
  Eigen::MatrixXd v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      double value = 1.0;
      for (std::size_t i = 0; i < set.dim(); ++i) {
        const double x = axes[i][static_cast<std::size_t>(set.exponent(row, i))];
        value *= std::pow(x, set.exponent(col, i));
      }
      v(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
    }
  }
  const Eigen::VectorXd sigma = Eigen::BDCSVD<Eigen::MatrixXd>(v).singularValues();
  if (sigma.size() == 0 || sigma(0) == 0.0) return false;
  return sigma(sigma.size() - 1) > options.relative_threshold * sigma(0);
}

bool vandermonde_unisolvence_check(const UnisolventGrid& grid, const UnisolvenceCheck& options) {
  std::vector<std::vector<double>> axes;
  axes.reserve(grid.dim());
  for (const auto& a : grid.axes()) axes.push_back(a.points);
  return vandermonde_unisolvence_check(grid.index_set(), axes, options);
}

std::string to_csv(const UnisolventGrid& grid) {
  std::ostringstream os;
  const std::size_t m = grid.dim();
  for (std::size_t i = 0; i < m; ++i) os << (i ? "," : "") << 'a' << (i + 1);
  for (std::size_t i = 0; i < m; ++i) os << ",x" << (i + 1);
  os << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) os << (i ? "," : "") << grid.index_set().exponent(k, i);
    for (std::size_t i = 0; i < m; ++i) os << ',' << format_double(grid.coordinate(k, i));
    os << '\n';
  }
  return os.str();
}

}  // namespace dcnewton
