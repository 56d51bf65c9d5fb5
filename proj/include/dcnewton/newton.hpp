#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dcnewton/grid.hpp"
#include "dcnewton/kernels.hpp"

namespace dcnewton {

/// Q(x) = sum_alpha c_alpha N_alpha(x) with
/// N_alpha(x) = prod_i prod_{j < alpha_i} (x_i - p_{j,i}).
/// Coefficients are stored in the canonical order of the grid's index set.
class NewtonPolynomial {
 public:
  /// Throws std::invalid_argument on a length mismatch or non-finite entry.
  NewtonPolynomial(GridPtr grid, std::vector<double> coeffs);

  const UnisolventGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t dim() const { return grid_->dim(); }

 private:
  GridPtr grid_;
  std::vector<double> coeffs_;
};

/// Function values f(p_alpha) in canonical order; these are the coefficients
/// in the Lagrange basis.
struct LagrangeCoefficients {
  GridPtr grid;
  std::vector<double> values;
};

using Function = std::function<double(std::span<const double>)>;

/// Multivariate divided differences. Eliminates coordinates from the last to
/// the first: along every coordinate d >= 2 each divided-difference level is a
/// row-wise (c_row - c_backrow) / (p_{a,d} - p_{a-level,d}); along the first
/// coordinate each row gets the classic in-place 1D scheme. Works in place on
/// a single |A| buffer.
///
/// Throws std::invalid_argument on misaligned lengths and NumericalError on
/// non-finite samples or a divisor below 1e-14 in magnitude.
NewtonPolynomial divided_differences(const LagrangeCoefficients& samples);

/// In-place variant: values in, Newton coefficients out.
void divided_differences_in_place(const UnisolventGrid& grid, std::span<double> values,
                                  const kernels::KernelTable& kt = kernels::active());

/// Applies the transpose of the divided-difference operator in place. Fed
/// with the Newton basis values (N_beta(x))_beta it returns the Lagrange
/// basis values (L_alpha(x))_alpha.
void divided_differences_transposed_in_place(const UnisolventGrid& grid, std::span<double> values,
                                             const kernels::KernelTable& kt = kernels::active());

/// Inverse of divided differences: Newton coefficients in, node values out.
void newton_to_values_in_place(const UnisolventGrid& grid, std::span<double> coeffs);

/// Nested form Q = Q_1 + (x_m - p_{0,m}) Q_2 applied recursively; one
/// multiply-add per tree node.
double eval_recursive(const NewtonPolynomial& poly, std::span<const double> x);

/// sum_alpha c_alpha prod_i q_{i, alpha_i - 1} with precomputed cumulative
/// products q_{i,k} = prod_{j <= k} (x_i - p_{j,i}).
double eval_iterative(const NewtonPolynomial& poly, std::span<const double> x);

/// Partial derivative of order `order` (one entry per coordinate) at x. The
/// univariate factor derivatives come from the product-rule recurrence
/// d_l <- d_l (x - p_j) + l d_{l-1}. A zero order is eval_iterative exactly.
double eval_derivative(const NewtonPolynomial& poly, std::span<const int> order, std::span<const double> x);

/// Evaluates (or differentiates, when order is non-empty) at points given
/// row-major as num_points x m. Batched four points at a time through the
/// selected kernel table; results are bitwise identical to eval_derivative.
std::vector<double> eval_batch(const NewtonPolynomial& poly, std::span<const double> points,
                               std::span<const int> order = {},
                               const kernels::KernelTable& kt = kernels::active());

/// Samples f once per grid node, then applies divided differences. A
/// non-finite sample raises NumericalError naming the node.
NewtonPolynomial interpolate(const Function& f, GridPtr grid);

/// Values at the grid nodes (the Lagrange coefficients).
LagrangeCoefficients newton_to_lagrange(const NewtonPolynomial& poly);

/// Newton coefficients of L_alpha, the Lagrange polynomial with
/// L_alpha(p_beta) = delta_{alpha,beta}. Rejects alpha not in A.
NewtonPolynomial lagrange_basis_in_newton(GridPtr grid, std::span<const int> alpha);

/// Derivative of order `order` of all Lagrange basis polynomials at x,
/// written to out (length |A|, canonical order). Empty order means values.
void lagrange_basis_values(const UnisolventGrid& grid, std::span<const double> x, std::span<const int> order,
                           std::span<double> out, const kernels::KernelTable& kt = kernels::active());

/// Newton basis values (or derivatives) (N_beta(x))_beta in canonical order.
void newton_basis_values(const UnisolventGrid& grid, std::span<const double> x, std::span<const int> order,
                         std::span<double> out);

/// T(k) = d^order/dx^order prod_{j<k} (x - p_j) for k = 0..count-1.
void univariate_factor_table(std::span<const double> axis, std::size_t count, double x, int order,
                             std::span<double> out);

}  // namespace dcnewton
