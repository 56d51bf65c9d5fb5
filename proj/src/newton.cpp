#include "dcnewton/newton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcnewton/error.hpp"
#include "dcnewton/io.hpp"

namespace dcnewton {

namespace {

constexpr double kMinDivisor = 1e-14;

void check_divisors(const UnisolventGrid& grid) {
  const auto& layout = grid.layout();
  for (std::size_t d = 0; d < grid.dim(); ++d) {
    const auto& pts = grid.axes()[d].points;
    std::vector<double> used(pts.begin(), pts.begin() + layout.max_exponent[d] + 1);
    std::sort(used.begin(), used.end());
    for (std::size_t k = 1; k < used.size(); ++k) {
      if (std::abs(used[k] - used[k - 1]) < kMinDivisor) {
        throw NumericalError("divided differences: axis " + std::to_string(d + 1) +
                             " has nodes closer than 1e-14 (" + format_double(used[k - 1]) + ", " +
                             format_double(used[k]) + ")");
      }
    }
  }
}

void check_order(const UnisolventGrid& grid, std::span<const int> order) {
  if (order.empty()) return;
  if (order.size() != grid.dim()) throw std::invalid_argument("derivative order length differs from dimension");
  for (int o : order) {
    if (o < 0) throw std::invalid_argument("derivative order entries must be >= 0");
  }
}

void check_point(const UnisolventGrid& grid, std::span<const double> x) {
  if (x.size() != grid.dim()) throw std::invalid_argument("point dimension differs from polynomial dimension");
}

// Per-dimension factor tables for one point, concatenated; offsets[d] marks
// the start of dimension d.
struct PointTables {
  std::vector<double> values;
  std::vector<std::size_t> offset;

  PointTables(const UnisolventGrid& grid, std::span<const double> x, std::span<const int> order) {
    const auto& layout = grid.layout();
    offset.resize(grid.dim());
    std::size_t total = 0;
    for (std::size_t d = 0; d < grid.dim(); ++d) {
      offset[d] = total;
      total += static_cast<std::size_t>(layout.max_exponent[d]) + 1;
    }
    values.resize(total);
    for (std::size_t d = 0; d < grid.dim(); ++d) {
      const std::size_t count = static_cast<std::size_t>(layout.max_exponent[d]) + 1;
      univariate_factor_table(grid.axes()[d].points, count, x[d], order.empty() ? 0 : order[d],
                              std::span<double>(values).subspan(offset[d], count));
    }
  }
};

}  // namespace

NewtonPolynomial::NewtonPolynomial(GridPtr grid, std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) throw std::invalid_argument("NewtonPolynomial: null grid");
  if (coeffs_.size() != grid_->size()) {
    throw std::invalid_argument("NewtonPolynomial: expected " + std::to_string(grid_->size()) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("NewtonPolynomial: non-finite coefficient");
  }
}

void univariate_factor_table(std::span<const double> axis, std::size_t count, double x, int order,
                             std::span<double> out) {
  if (order == 0) {
    double q = 1.0;
    out[0] = q;
    for (std::size_t k = 1; k < count; ++k) {
      q = q * (x - axis[k - 1]);
      out[k] = q;
    }
    return;
  }
  // d[l] holds the l-th derivative of prod_{j<k}(x - p_j).
  std::vector<double> d(static_cast<std::size_t>(order) + 1, 0.0);
  d[0] = 1.0;
  out[0] = d[static_cast<std::size_t>(order)];
  for (std::size_t k = 1; k < count; ++k) {
    const double factor = x - axis[k - 1];
    for (std::size_t l = static_cast<std::size_t>(order); l >= 1; --l) {
      d[l] = d[l] * factor + static_cast<double>(l) * d[l - 1];
    }
    d[0] = d[0] * factor;
    out[k] = d[static_cast<std::size_t>(order)];
  }
}

void divided_differences_in_place(const UnisolventGrid& grid, std::span<double> c, const kernels::KernelTable& kt) {
  const auto& layout = grid.layout();
  if (c.size() != grid.size()) {
    throw std::invalid_argument("divided differences: expected " + std::to_string(grid.size()) +
                                " samples, got " + std::to_string(c.size()));
  }
  check_divisors(grid);
  double* data = c.data();
  for (std::size_t d = grid.dim(); d-- > 1;) {
    const auto& p = grid.axes()[d].points;
    for (int level = 1; level <= layout.max_exponent[d]; ++level) {
      for (std::size_t r = layout.rows(); r-- > 0;) {
        const int a = layout.exponent(r, d);
        if (a < level) continue;
        const std::uint32_t br = layout.back(r, d);
        kt.row_sub_div(data + layout.start[r], data + layout.start[br], layout.length[r],
                       p[static_cast<std::size_t>(a)] - p[static_cast<std::size_t>(a - level)]);
      }
    }
  }
  const double* p0 = grid.axes()[0].points.data();
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    kt.line_divided_differences(data + layout.start[r], p0, layout.length[r]);
  }
}

void divided_differences_transposed_in_place(const UnisolventGrid& grid, std::span<double> y,
                                             const kernels::KernelTable& kt) {
  const auto& layout = grid.layout();
  if (y.size() != grid.size()) throw std::invalid_argument("transposed divided differences: length mismatch");
  double* data = y.data();
  const double* p0 = grid.axes()[0].points.data();
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    kt.line_divided_differences_transposed(data + layout.start[r], p0, layout.length[r]);
  }
  for (std::size_t d = 1; d < grid.dim(); ++d) {
    const auto& p = grid.axes()[d].points;
    for (int level = layout.max_exponent[d]; level >= 1; --level) {
      for (std::size_t r = 0; r < layout.rows(); ++r) {
        const int a = layout.exponent(r, d);
        if (a < level) continue;
        const std::uint32_t br = layout.back(r, d);
        kt.row_div_sub_transposed(data + layout.start[r], data + layout.start[br], layout.length[r],
                                  p[static_cast<std::size_t>(a)] - p[static_cast<std::size_t>(a - level)]);
      }
    }
  }
}

void newton_to_values_in_place(const UnisolventGrid& grid, std::span<double> c) {
  const auto& layout = grid.layout();
  if (c.size() != grid.size()) throw std::invalid_argument("newton_to_values: length mismatch");
  const auto& p0 = grid.axes()[0].points;
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    double* line = c.data() + layout.start[r];
    const std::size_t n = layout.length[r];
    for (std::size_t level = n; level-- > 1;) {
      for (std::size_t i = level; i < n; ++i) line[i] = line[i] * (p0[i] - p0[i - level]) + line[i - 1];
    }
  }
  for (std::size_t d = 1; d < grid.dim(); ++d) {
    const auto& p = grid.axes()[d].points;
    for (int level = layout.max_exponent[d]; level >= 1; --level) {
      for (std::size_t r = 0; r < layout.rows(); ++r) {
        const int a = layout.exponent(r, d);
        if (a < level) continue;
        const double s = p[static_cast<std::size_t>(a)] - p[static_cast<std::size_t>(a - level)];
        double* dst = c.data() + layout.start[r];
        const double* src = c.data() + layout.start[layout.back(r, d)];
        for (std::size_t i = 0; i < layout.length[r]; ++i) dst[i] = dst[i] * s + src[i];
      }
    }
  }
}

NewtonPolynomial divided_differences(const LagrangeCoefficients& samples) {
  if (!samples.grid) throw std::invalid_argument("divided differences: null grid");
  for (std::size_t k = 0; k < samples.values.size(); ++k) {
    if (!std::isfinite(samples.values[k])) {
      throw NumericalError("divided differences: non-finite sample at position " + std::to_string(k));
    }
  }
  std::vector<double> c = samples.values;
  divided_differences_in_place(*samples.grid, c);
  return NewtonPolynomial(samples.grid, std::move(c));
}

namespace {

class RecursiveEvaluator {
 public:
  RecursiveEvaluator(const NewtonPolynomial& poly, std::span<const double> x)
      : grid_(poly.grid()), layout_(poly.grid().layout()), c_(poly.coeffs()), x_(x) {}

  double run() { return block(grid_.dim() - 1, 0, layout_.rows()); }

 private:
  // Rows [r0, r1) share every exponent above coordinate d. Split them by
  // alpha_d into Q_1 (alpha_d = 0) and the shifted remainder Q_2, and nest:
  // Q = Q_1 + (x_d - p_{0,d}) Q_2, recursively.
  double block(std::size_t d, std::size_t r0, std::size_t r1) {
    if (d == 0) return row(r0);
    std::vector<std::size_t> bounds{r0};
    for (std::size_t r = r0 + 1; r < r1; ++r) {
      if (layout_.exponent(r, d) != layout_.exponent(r - 1, d)) bounds.push_back(r);
    }
    bounds.push_back(r1);
    const auto& p = grid_.axes()[d].points;
    const double xd = x_[d];
    const std::size_t parts = bounds.size() - 1;
    double acc = block(d - 1, bounds[parts - 1], bounds[parts]);
    for (std::size_t k = parts - 1; k-- > 0;) {
      acc = block(d - 1, bounds[k], bounds[k + 1]) + (xd - p[k]) * acc;
    }
    return acc;
  }

  double row(std::size_t r) const {
    const double* c = c_.data() + layout_.start[r];
    const std::size_t len = layout_.length[r];
    const auto& p = grid_.axes()[0].points;
    double acc = c[len - 1];
    for (std::size_t k = len - 1; k-- > 0;) acc = c[k] + (x_[0] - p[k]) * acc;
    return acc;
  }

  const UnisolventGrid& grid_;
  const RowLayout& layout_;
  std::span<const double> c_;
  std::span<const double> x_;
};

}  // namespace

double eval_recursive(const NewtonPolynomial& poly, std::span<const double> x) {
  check_point(poly.grid(), x);
  return RecursiveEvaluator(poly, x).run();
}

double eval_iterative(const NewtonPolynomial& poly, std::span<const double> x) {
  return eval_derivative(poly, {}, x);
}

double eval_derivative(const NewtonPolynomial& poly, std::span<const int> order, std::span<const double> x) {
  check_point(poly.grid(), x);
  check_order(poly.grid(), order);
  const PointTables tables(poly.grid(), x, order);
  return kernels::contract_point(poly.coeffs().data(), poly.grid().layout(), tables.values.data(),
                                 tables.offset.data());
}

std::vector<double> eval_batch(const NewtonPolynomial& poly, std::span<const double> points,
                               std::span<const int> order, const kernels::KernelTable& kt) {
  const auto& grid = poly.grid();
  const std::size_t m = grid.dim();
  if (points.size() % m != 0) throw std::invalid_argument("eval_batch: point buffer not a multiple of m");
  check_order(grid, order);
  const std::size_t count = points.size() / m;
  const auto& layout = grid.layout();

  std::vector<std::size_t> offset(m);
  std::vector<std::size_t> extent(m);
  std::size_t total = 0;
  for (std::size_t d = 0; d < m; ++d) {
    extent[d] = static_cast<std::size_t>(layout.max_exponent[d]) + 1;
    offset[d] = total * kernels::kLanes;
    total += extent[d];
  }
  std::vector<double> interleaved(total * kernels::kLanes);
  std::vector<double> scratch(*std::max_element(extent.begin(), extent.end()));
  std::vector<double> result(count);
  double out[kernels::kLanes];

  for (std::size_t base = 0; base < count; base += kernels::kLanes) {
    for (std::size_t lane = 0; lane < kernels::kLanes; ++lane) {
      // Pad the final partial batch with the last point.
      const std::size_t idx = std::min(base + lane, count - 1);
      for (std::size_t d = 0; d < m; ++d) {
        univariate_factor_table(grid.axes()[d].points, extent[d], points[idx * m + d], order.empty() ? 0 : order[d],
                                std::span<double>(scratch).first(extent[d]));
        for (std::size_t k = 0; k < extent[d]; ++k) {
          interleaved[offset[d] + k * kernels::kLanes + lane] = scratch[k];
        }
      }
    }
    kt.contract_batch(poly.coeffs().data(), layout, {interleaved.data(), offset.data()}, out);
    for (std::size_t lane = 0; lane < kernels::kLanes && base + lane < count; ++lane) result[base + lane] = out[lane];
  }
  return result;
}

NewtonPolynomial interpolate(const Function& f, GridPtr grid) {
  if (!grid) throw std::invalid_argument("interpolate: null grid");
  std::vector<double> values(grid->size());
  std::vector<double> x(grid->dim());
  for (std::size_t k = 0; k < grid->size(); ++k) {
    for (std::size_t i = 0; i < grid->dim(); ++i) x[i] = grid->coordinate(k, i);
    values[k] = f(x);
    if (!std::isfinite(values[k])) {
      std::ostringstream os;
      os << "interpolate: non-finite sample at node (";
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << format_double(x[i]);
      os << ") for index (";
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << grid->index_set().exponent(k, i);
      os << ")";
      throw NumericalError(os.str());
    }
  }
  divided_differences_in_place(*grid, values);
  return NewtonPolynomial(std::move(grid), std::move(values));
}

LagrangeCoefficients newton_to_lagrange(const NewtonPolynomial& poly) {
  std::vector<double> values(poly.coeffs().begin(), poly.coeffs().end());
  newton_to_values_in_place(poly.grid(), values);
  return {poly.grid_ptr(), std::move(values)};
}

NewtonPolynomial lagrange_basis_in_newton(GridPtr grid, std::span<const int> alpha) {
  if (!grid) throw std::invalid_argument("lagrange_basis_in_newton: null grid");
  const auto pos = grid->index_set().find(alpha);
  if (!pos) throw std::invalid_argument("lagrange_basis_in_newton: multi-index not in the set");
  std::vector<double> delta(grid->size(), 0.0);
  delta[*pos] = 1.0;
  divided_differences_in_place(*grid, delta);
  return NewtonPolynomial(std::move(grid), std::move(delta));
}

void newton_basis_values(const UnisolventGrid& grid, std::span<const double> x, std::span<const int> order,
                         std::span<double> out) {
  check_point(grid, x);
  check_order(grid, order);
  if (out.size() != grid.size()) throw std::invalid_argument("newton_basis_values: output length mismatch");
  const PointTables tables(grid, x, order);
  const auto& layout = grid.layout();
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    double w = 1.0;
    for (std::size_t d = 1; d < grid.dim(); ++d) {
      w = w * tables.values[tables.offset[d] + static_cast<std::size_t>(layout.exponent(r, d))];
    }
    double* dst = out.data() + layout.start[r];
    for (std::size_t k = 0; k < layout.length[r]; ++k) dst[k] = w * tables.values[k];
  }
}

void lagrange_basis_values(const UnisolventGrid& grid, std::span<const double> x, std::span<const int> order,
                           std::span<double> out, const kernels::KernelTable& kt) {
  newton_basis_values(grid, x, order, out);
  divided_differences_transposed_in_place(grid, out, kt);
}

}  // namespace dcnewton
