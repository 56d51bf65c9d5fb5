#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcnewton/analysis.hpp"
#include "dcnewton/error.hpp"
#include "dcnewton/io.hpp"

namespace dcnewton {

ConvergenceRecord convergence_run(const BenchmarkFunction& f, const LpDegree& p, NodeFamily family,
                                  const std::vector<int>& degrees, const ConvergenceOptions& options) {
  f.validate();
  if (degrees.empty()) throw std::invalid_argument("convergence_run: no degrees given");
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (degrees[k] < 0) throw std::invalid_argument("convergence_run: negative degree");
    if (k > 0 && degrees[k] <= degrees[k - 1]) throw std::invalid_argument("convergence_run: degrees must increase");
  }
  if (options.samples == 0) throw std::invalid_argument("convergence_run: need at least one sample");
  const std::size_t m = f.dim;
  const std::vector<int>& order = options.deriv_order;
  if (!order.empty() && order.size() != m) throw std::invalid_argument("derivative order length differs from m");
  // Rejects unsupported (function, order) pairs before any work is done.
  benchmark_eval(f, std::vector<double>(m, 0.0), order);

  ConvergenceRecord record{f, p, family, options.samples, options.seed, order, {}};
  for (int n : degrees) {
    try {
      GridPtr grid = make_lp_grid(m, n, p, family, options.leja_resolution);
      const NewtonPolynomial poly = interpolate(as_function(f), grid);
      const std::vector<double> pts =
          UniformCube(options.seed ^ static_cast<std::uint64_t>(n)).points(m, options.samples);
      const std::vector<double> approx = eval_batch(poly, pts, order);
      double err = 0.0;
      for (std::size_t s = 0; s < options.samples; ++s) {
        const double exact = benchmark_eval(f, std::span<const double>(pts.data() + s * m, m), order);
        err = std::max(err, std::abs(exact - approx[s]));
      }
      record.rows.push_back({n, grid->size(), err});
    } catch (const NumericalError& e) {
      throw NumericalError("degree " + std::to_string(n) + ": " + e.what());
    }
  }
  return record;
}

RateFit fit_rate(const std::vector<int>& degrees, const std::vector<double>& errors) {
  if (degrees.size() != errors.size()) throw std::invalid_argument("fit_rate: degree and error counts differ");
  std::vector<double> n;
  std::vector<double> e;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (std::isfinite(errors[k]) && errors[k] >= 1e-13) {
      n.push_back(degrees[k]);
      e.push_back(errors[k]);
    }
  }
  std::size_t first = 0;
  // Leading rows that do not exceed both successors are pre-asymptotic.
  while (first + 2 < e.size() && !(e[first] > e[first + 1] && e[first] > e[first + 2])) ++first;
  const std::size_t count = e.size() - first;
  if (count < 4) {
    throw std::invalid_argument("fit_rate: " + std::to_string(count) +
                                " usable rows after filtering, at least 4 are needed");
  }

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = first; k < e.size(); ++k) {
    mx += n[k];
    my += std::log(e[k]);
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = first; k < e.size(); ++k) {
    const double dx = n[k] - mx;
    const double dy = std::log(e[k]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = first; k < e.size(); ++k) {
    const double r = std::log(e[k]) - (intercept + slope * n[k]);
    ss_res += r * r;
  }
  RateFit fit;
  fit.c = std::exp(intercept);
  fit.rho = std::exp(-slope);
  fit.r_squared = syy > 0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.n_lo = static_cast<int>(n[first]);
  fit.n_hi = static_cast<int>(n.back());
  fit.points = count;
  return fit;
}

RateFit fit_rate(const ConvergenceRecord& record) {
  std::vector<int> n;
  std::vector<double> e;
  for (const auto& row : record.rows) {
    n.push_back(row.n);
    e.push_back(row.error);
  }
  return fit_rate(n, e);
}

std::string to_csv(const ConvergenceRecord& record) {
  std::string order = "0";
  if (!record.deriv_order.empty()) {
    order.clear();
    for (std::size_t i = 0; i < record.deriv_order.size(); ++i) {
      order += (i ? "," : "") + std::to_string(record.deriv_order[i]);
    }
  }
  std::string out;
  out += "# function: " + to_string(record.function.id) + "\n";
  out += "# params: " + record.function.describe() + "\n";
  out += "# m: " + std::to_string(record.function.dim) + "\n";
  out += "# p: " + record.p.to_string() + "\n";
  out += "# family: " + to_string(record.family) + "\n";
  out += "# samples: " + std::to_string(record.samples) + "\n";
  out += "# seed: " + std::to_string(record.seed) + "\n";
  out += "# deriv_order: " + order + "\n";
  out += "n,num_coeffs,error\n";
  for (const auto& row : record.rows) {
    out += std::to_string(row.n) + "," + std::to_string(row.num_coeffs) + "," + format_double(row.error) + "\n";
  }
  return out;
}

std::string to_json(const RateFit& fit) {
  // Raw number formatting keeps the 17-digit convention used everywhere else.
  return "{\"c\": " + format_double(fit.c) + ", \"rho\": " + format_double(fit.rho) +
         ", \"r_squared\": " + format_double(fit.r_squared) + ", \"fit_range\": [" + std::to_string(fit.n_lo) +
         ", " + std::to_string(fit.n_hi) + "]}\n";
}

}  // namespace dcnewton
