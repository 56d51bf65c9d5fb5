#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dcnewton/grid.hpp"
#include "dcnewton/multi_index.hpp"
#include "dcnewton/newton.hpp"

namespace dcnewton {

enum class BenchmarkId { runge, f1_shifted_pole, f3_perturbed_runge, f4_shifted_runge_m, f5_trig };

std::string to_string(BenchmarkId id);
/// Accepts the full ids and the short forms runge, f1, f3, f4, f5.
BenchmarkId parse_benchmark_id(const std::string& text);

/// runge: 1 / (s^2 + r^2 |x|^2)
/// f1:    1 / ((x1 - r)^2 + x2^2), m = 2, r > 1
/// f3:    1 / (1 + (sum_i 5/i^3 x_i)^2)
/// f4:    1 / sum_i (x_i - a)^2, a > 1
/// f5:    cos(pi k1 sum x) + sin(pi k2 sum x)
struct BenchmarkFunction {
  BenchmarkId id = BenchmarkId::runge;
  std::size_t dim = 1;
  double r = 1.0;
  double s = 1.0;
  double a = 1.25;
  double k1 = 1.0;
  double k2 = 1.0;

  /// Throws std::invalid_argument when the parameters put a pole inside the
  /// closed cube or the dimension does not fit the function.
  void validate() const;
  /// "runge(r=1,s=1)" style tag for metadata.
  std::string describe() const;
};

/// Exact partial derivative of order `order` (empty or all zero for values).
/// Orders with |order|_1 <= 2 are supported for runge, f1 and f5; the other
/// functions support values only.
double benchmark_eval(const BenchmarkFunction& f, std::span<const double> x, std::span<const int> order = {});

Function as_function(const BenchmarkFunction& f);

/// Reference geometric rate, or nullopt where no closed form is known.
std::optional<double> optimal_rho(const BenchmarkFunction& f, const LpDegree& p);

/// Uniform doubles on [-1, 1] from mt19937_64 with a fixed bit recipe, so the
/// stream is identical across platforms and standard libraries.
class UniformCube {
 public:
  explicit UniformCube(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
  /// count points of dimension m, row-major.
  std::vector<double> points(std::size_t m, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

struct LebesgueOptions {
  std::size_t max_coeffs = 5000;
};

/// Lower bound on the order-k Lebesgue constant
///   sum_{|beta|_1 <= k} sup_x sum_alpha |d^beta L_alpha(x)|
/// with the sup taken over num_samples seeded uniform points (m >= 2) or an
/// equispaced grid of num_samples points including both ends (m = 1).
double lebesgue_estimate(const UnisolventGrid& grid, std::size_t num_samples, std::uint64_t seed, int k = 0,
                         const LebesgueOptions& options = {});

struct ConvergenceRow {
  int n = 0;
  std::size_t num_coeffs = 0;
  double error = 0.0;
};

struct ConvergenceRecord {
  BenchmarkFunction function;
  LpDegree p = LpDegree::two();
  NodeFamily family = NodeFamily::leja_ordered_chebyshev_lobatto;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<int> deriv_order;
  std::vector<ConvergenceRow> rows;
};

struct ConvergenceOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::vector<int> deriv_order;  // empty means values
  int leja_resolution = 100000;
};

/// For each degree n: grid on A_{m,n,p}, interpolate, then the max abs error
/// of the requested derivative over fresh points drawn with seed ^ n.
/// Degrees must be strictly increasing. Errors are rethrown with the degree.
ConvergenceRecord convergence_run(const BenchmarkFunction& f, const LpDegree& p, NodeFamily family,
                                  const std::vector<int>& degrees, const ConvergenceOptions& options);

struct RateFit {
  double c = 0.0;
  double rho = 0.0;
  double r_squared = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  std::size_t points = 0;
};

/// Least squares of log(error) against n on the usable rows: errors below
/// 1e-13 or non-finite are dropped, then leading rows are trimmed until one
/// exceeds both of its two successors. Needs at least four rows.
RateFit fit_rate(const std::vector<int>& degrees, const std::vector<double>& errors);
RateFit fit_rate(const ConvergenceRecord& record);

/// header n,num_coeffs,error with '#' metadata lines.
std::string to_csv(const ConvergenceRecord& record);
/// {c, rho, r_squared, fit_range: [n_lo, n_hi]}
std::string to_json(const RateFit& fit);

struct LebesgueRow {
  std::size_t m = 0;
  LpDegree p = LpDegree::two();
  int n = 0;
  std::size_t num_coeffs = 0;
  double lambda = 0.0;
};

/// header m,p,n,num_coeffs,lambda
std::string to_csv(const std::vector<LebesgueRow>& rows);

/// (2/pi)(log(n+1) + gamma + log(8/pi)), the asymptotic Chebyshev-Lobatto
/// Lebesgue constant.
double chebyshev_lebesgue_asymptote(int n);

}  // namespace dcnewton
