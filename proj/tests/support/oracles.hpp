#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the divided-difference or evaluation code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dcnewton/grid.hpp"
#include "dcnewton/multi_index.hpp"

namespace oracle {

using dcnewton::MultiIndex;

// N_beta(x) = prod_i prod_{j < beta_i} (x_i - p_{j,i})
inline double newton_basis(const std::vector<std::vector<double>>& axes, std::span<const int> beta,
                           std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    for (int j = 0; j < beta[i]; ++j) v *= x[i] - axes[i][static_cast<std::size_t>(j)];
  }
  return v;
}

inline std::vector<std::vector<double>> axis_points(const dcnewton::UnisolventGrid& grid) {
  std::vector<std::vector<double>> axes;
  for (const auto& a : grid.axes()) axes.push_back(a.points);
  return axes;
}

// Dense solve of sum_beta c_beta N_beta(p_alpha) = f(p_alpha).
inline std::vector<double> newton_collocation_solve(const dcnewton::UnisolventGrid& grid,
                                                    const std::vector<double>& values) {
  const auto axes = axis_points(grid);
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto x = grid.node(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = newton_basis(axes, grid.index_set()[static_cast<std::size_t>(c)], x);
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
  const Eigen::VectorXd sol = m.fullPivLu().solve(rhs);
  return {sol.data(), sol.data() + n};
}

// A random polynomial in Pi_A written in the monomial basis.
struct Monomial {
  std::vector<MultiIndex> exps;
  std::vector<double> coef;

  double operator()(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      double t = coef[k];
      for (std::size_t i = 0; i < x.size(); ++i) t *= std::pow(x[i], exps[k][i]);
      s += t;
    }
    return s;
  }

  double derivative(std::span<const double> x, std::size_t d) const {
    double s = 0.0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k][d] == 0) continue;
      double t = coef[k] * exps[k][d];
      for (std::size_t i = 0; i < x.size(); ++i) t *= std::pow(x[i], exps[k][i] - (i == d ? 1 : 0));
      s += t;
    }
    return s;
  }
};

inline Monomial random_member(const dcnewton::MultiIndexSet& set, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Monomial p;
  for (std::size_t k = 0; k < set.size(); ++k) {
    p.exps.emplace_back(set[k].begin(), set[k].end());
    p.coef.push_back(u(rng));
  }
  return p;
}

// Grows a random downward-closed set from {0} by adding indices whose lower
// neighbours are all present, with a per-coordinate exponent cap.
inline dcnewton::MultiIndexSet random_downward_closed(std::size_t m, std::size_t target, int cap, std::mt19937_64& rng) {
  std::set<MultiIndex> members{MultiIndex(m, 0)};
  std::size_t stalls = 0;
  while (members.size() < target && stalls < 1000) {
    std::vector<MultiIndex> frontier;
    for (const auto& a : members) {
      for (std::size_t i = 0; i < m; ++i) {
        MultiIndex b = a;
        if (++b[i] > cap || members.count(b)) continue;
        bool closed = true;
        for (std::size_t h = 0; h < m && closed; ++h) {
          if (b[h] == 0) continue;
          MultiIndex c = b;
          --c[h];
          closed = members.count(c) > 0;
        }
        if (closed) frontier.push_back(b);
      }
    }
    if (frontier.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    if (!members.insert(frontier[pick(rng)]).second) ++stalls;
  }
  return dcnewton::MultiIndexSet::from_indices(m, {members.begin(), members.end()});
}

// Chebyshev-like distinct points, jittered and shuffled: random but far from
// the pathological clustering of uniform draws.
inline std::vector<double> jittered_axis(std::size_t count, std::mt19937_64& rng) {
  std::vector<double> pts(count);
  const double n = static_cast<double>(std::max<std::size_t>(count, 2) - 1);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = (static_cast<double>(k) + jitter(rng)) * std::numbers::pi / n;
    pts[k] = std::clamp(std::cos(t), -1.0, 1.0);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::shuffle(pts.begin(), pts.end(), rng);
  return pts;
}

inline dcnewton::GridPtr random_grid(const dcnewton::MultiIndexSet& set, std::mt19937_64& rng) {
  std::vector<dcnewton::Nodes1D> axes;
  for (std::size_t i = 0; i < set.dim(); ++i) {
    const std::size_t need = static_cast<std::size_t>(dcnewton::max_exponent(set, i)) + 1;
    std::vector<double> pts;
    do {
      pts = jittered_axis(need, rng);
    } while (pts.size() < need);
    axes.push_back({pts, dcnewton::NodeFamily::custom});
  }
  return dcnewton::build_grid(set, axes);
}

// Per-dimension exponent cap keeping monomial Vandermonde matrices usable.
inline int degree_cap(std::size_t m) {
  switch (m) {
    case 1:
    case 2: return 10;
    case 3: return 7;
    default: return 5;
  }
}

// sup over a dense equispaced grid of sum_k |l_k(x)| with the product form
// of the 1D Lagrange basis.
inline double lebesgue_1d_dense(const std::vector<double>& nodes, std::size_t samples) {
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = -1.0 + 2.0 * static_cast<double>(s) / static_cast<double>(samples - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      double l = 1.0;
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j != k) l *= (x - nodes[j]) / (nodes[k] - nodes[j]);
      }
      sum += std::abs(l);
    }
    best = std::max(best, sum);
  }
  return best;
}

template <class F>
double central_difference(F&& f, std::vector<double> x, std::size_t d, double h) {
  const double x0 = x[d];
  x[d] = x0 + h;
  const double up = f(x);
  x[d] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
