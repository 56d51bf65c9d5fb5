#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dcnewton/analysis.hpp"
#include "dcnewton/io.hpp"

namespace dcnewton {

std::vector<double> UniformCube::points(std::size_t m, std::size_t count) {
  std::vector<double> out(m * count);
  for (double& v : out) v = next();
  return out;
}

double chebyshev_lebesgue_asymptote(int n) {
  return 2.0 / std::numbers::pi *
         (std::log(static_cast<double>(n) + 1.0) + std::numbers::egamma + std::log(8.0 / std::numbers::pi));
}

double lebesgue_estimate(const UnisolventGrid& grid, std::size_t num_samples, std::uint64_t seed, int k,
                         const LebesgueOptions& options) {
  if (num_samples == 0) throw std::invalid_argument("lebesgue_estimate: need at least one sample");
  if (k < 0) throw std::invalid_argument("lebesgue_estimate: derivative order k must be >= 0");
  if (grid.size() > options.max_coeffs) {
    throw std::invalid_argument("lebesgue_estimate: |A| = " + std::to_string(grid.size()) + " exceeds the cap " +
                                std::to_string(options.max_coeffs));
  }
  const std::size_t m = grid.dim();

  std::vector<double> points;
  if (m == 1) {
    points.resize(num_samples);
    if (num_samples == 1) {
      points[0] = 1.0;
    } else {
      for (std::size_t i = 0; i < num_samples; ++i) {
        points[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(num_samples - 1);
      }
    }
  } else {
    points = UniformCube(seed).points(m, num_samples);
  }

  const MultiIndexSet orders = make_lp_set(m, k, LpDegree::one());
  std::vector<double> sup(orders.size(), 0.0);
  std::vector<double> basis(grid.size());
  for (std::size_t s = 0; s < num_samples; ++s) {
    const std::span<const double> x(points.data() + s * m, m);
    for (std::size_t b = 0; b < orders.size(); ++b) {
      lagrange_basis_values(grid, x, k == 0 ? std::span<const int>{} : orders[b], basis);
      double sum = 0.0;
      for (double v : basis) sum += std::abs(v);
      sup[b] = std::max(sup[b], sum);
    }
  }
  double total = 0.0;
  for (double v : sup) total += v;
  return total;
}

std::string to_csv(const std::vector<LebesgueRow>& rows) {
  std::string out = "m,p,n,num_coeffs,lambda\n";
  for (const auto& row : rows) {
    out += std::to_string(row.m) + "," + row.p.to_string() + "," + std::to_string(row.n) + "," +
           std::to_string(row.num_coeffs) + "," + format_double(row.lambda) + "\n";
  }
  return out;
}

}  // namespace dcnewton
