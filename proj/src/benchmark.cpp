#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dcnewton/analysis.hpp"
#include "dcnewton/io.hpp"

namespace dcnewton {

std::string to_string(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::runge: return "runge";
    case BenchmarkId::f1_shifted_pole: return "f1_shifted_pole";
    case BenchmarkId::f3_perturbed_runge: return "f3_perturbed_runge";
    case BenchmarkId::f4_shifted_runge_m: return "f4_shifted_runge_m";
    case BenchmarkId::f5_trig: return "f5_trig";
  }
  return "unknown";
}

BenchmarkId parse_benchmark_id(const std::string& text) {
  if (text == "runge" || text == "f2") return BenchmarkId::runge;
  if (text == "f1" || text == "f1_shifted_pole") return BenchmarkId::f1_shifted_pole;
  if (text == "f3" || text == "f3_perturbed_runge") return BenchmarkId::f3_perturbed_runge;
  if (text == "f4" || text == "f4_shifted_runge_m") return BenchmarkId::f4_shifted_runge_m;
  if (text == "f5" || text == "f5_trig") return BenchmarkId::f5_trig;
  throw std::invalid_argument("unknown function '" + text + "' (runge, f1, f3, f4, f5)");
}

void BenchmarkFunction::validate() const {
  if (dim == 0) throw std::invalid_argument("function dimension must be >= 1");
  switch (id) {
    case BenchmarkId::runge:
      if (!(s > 0) || !std::isfinite(s) || !(r >= 0) || !std::isfinite(r)) {
        throw std::invalid_argument("runge needs s > 0 and r >= 0");
      }
      break;
    case BenchmarkId::f1_shifted_pole:
      if (dim != 2) throw std::invalid_argument("f1 is bivariate (m = 2)");
      if (!(r > 1) || !std::isfinite(r)) throw std::invalid_argument("f1 needs r > 1 (pole outside the cube)");
      break;
    case BenchmarkId::f3_perturbed_runge:
      break;
    case BenchmarkId::f4_shifted_runge_m:
      if (!(a > 1) || !std::isfinite(a)) throw std::invalid_argument("f4 needs a > 1 (pole outside the cube)");
      break;
    case BenchmarkId::f5_trig:
      if (!std::isfinite(k1) || !std::isfinite(k2)) throw std::invalid_argument("f5 needs finite k1, k2");
      break;
  }
}

std::string BenchmarkFunction::describe() const {
  std::ostringstream os;
  os << to_string(id) << "(";
  switch (id) {
    case BenchmarkId::runge: os << "r=" << format_double(r) << ",s=" << format_double(s); break;
    case BenchmarkId::f1_shifted_pole: os << "r=" << format_double(r); break;
    case BenchmarkId::f3_perturbed_runge: break;
    case BenchmarkId::f4_shifted_runge_m: os << "a=" << format_double(a); break;
    case BenchmarkId::f5_trig: os << "k1=" << format_double(k1) << ",k2=" << format_double(k2); break;
  }
  os << ")";
  return os.str();
}

namespace {

// 1/g with g = c0 + w * |u|^2 and u = x - shift; derivatives of order <= 2.
double inverse_quadratic(double c0, double w, std::span<const double> u, int i, int j) {
  double sq = 0.0;
  for (double v : u) sq += v * v;
  const double g = c0 + w * sq;
  if (i < 0) return 1.0 / g;
  const double ui = u[static_cast<std::size_t>(i)];
  if (j < 0) return -2.0 * w * ui / (g * g);
  const double uj = u[static_cast<std::size_t>(j)];
  const double cross = 8.0 * w * w * ui * uj / (g * g * g);
  return i == j ? cross - 2.0 * w / (g * g) : cross;
}

}  // namespace

double benchmark_eval(const BenchmarkFunction& f, std::span<const double> x, std::span<const int> order) {
  if (x.size() != f.dim) throw std::invalid_argument("benchmark_eval: point dimension mismatch");
  int total = 0;
  int i = -1;
  int j = -1;
  if (!order.empty()) {
    if (order.size() != f.dim) throw std::invalid_argument("benchmark_eval: order length mismatch");
    for (std::size_t d = 0; d < order.size(); ++d) {
      if (order[d] < 0) throw std::invalid_argument("benchmark_eval: negative order");
      total += order[d];
      for (int t = 0; t < order[d]; ++t) (i < 0 ? i : j) = static_cast<int>(d);
    }
  }
  if (total > 2) throw std::invalid_argument("benchmark_eval: derivative orders above 2 are not available");

  switch (f.id) {
    case BenchmarkId::runge:
      return inverse_quadratic(f.s * f.s, f.r * f.r, x, i, j);
    case BenchmarkId::f1_shifted_pole: {
      const double u[2] = {x[0] - f.r, x[1]};
      return inverse_quadratic(0.0, 1.0, u, i, j);
    }
    case BenchmarkId::f5_trig: {
      double t = 0.0;
      for (double v : x) t += v;
      const double a1 = std::numbers::pi * f.k1;
      const double a2 = std::numbers::pi * f.k2;
      if (total == 0) return std::cos(a1 * t) + std::sin(a2 * t);
      if (total == 1) return -a1 * std::sin(a1 * t) + a2 * std::cos(a2 * t);
      return -a1 * a1 * std::cos(a1 * t) - a2 * a2 * std::sin(a2 * t);
    }
    case BenchmarkId::f3_perturbed_runge:
    case BenchmarkId::f4_shifted_runge_m:
      break;
  }
  if (total > 0) {
    throw std::invalid_argument("benchmark_eval: " + to_string(f.id) + " has no analytic derivatives");
  }
  double acc = 0.0;
  if (f.id == BenchmarkId::f3_perturbed_runge) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double k = static_cast<double>(d + 1);
      acc += 5.0 / (k * k * k) * x[d];
    }
    return 1.0 / (1.0 + acc * acc);
  }
  for (double v : x) acc += (v - f.a) * (v - f.a);
  return 1.0 / acc;
}

Function as_function(const BenchmarkFunction& f) {
  return [f](std::span<const double> x) { return benchmark_eval(f, x); };
}

std::optional<double> optimal_rho(const BenchmarkFunction& f, const LpDegree& p) {
  using K = LpDegree::Kind;
  const bool two_or_inf = p.kind() == K::two || p.kind() == K::infinity;
  auto runge_rate = [&](double h) -> std::optional<double> {
    if (p.kind() == K::one) {
      const double m = static_cast<double>(f.dim);
      return (h + std::sqrt(h * h + m)) / std::sqrt(m);
    }
    if (two_or_inf) return h + std::sqrt(h * h + 1.0);
    return std::nullopt;
  };
  switch (f.id) {
    case BenchmarkId::runge:
      if (f.r <= 0) return std::nullopt;
      return runge_rate(f.s / f.r);
    case BenchmarkId::f1_shifted_pole:
      if (p.kind() == K::one) return f.r;
      if (two_or_inf) return f.r - 1.0 + std::sqrt((f.r - 1.0) * (f.r - 1.0) + 1.0);
      return std::nullopt;
    case BenchmarkId::f3_perturbed_runge:
      if (two_or_inf) return runge_rate(1.0 / 5.0);
      return std::nullopt;
    case BenchmarkId::f4_shifted_runge_m:
      if (f.dim == 2 && f.a == 1.25) {
        if (p.kind() == K::two) return 2.0518;
        if (p.kind() == K::infinity) return 2.1531;
      }
      return std::nullopt;
    case BenchmarkId::f5_trig:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace dcnewton
