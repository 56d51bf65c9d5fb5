#include <doctest.h>

#include <cmath>
#include <random>

#include "dcnewton/analysis.hpp"
#include "dcnewton/error.hpp"
#include "oracles.hpp"

using namespace dcnewton;

TEST_SUITE("analysis") {

TEST_CASE("benchmark values") {
  CHECK(benchmark_eval({BenchmarkId::runge, 1, 1, 1}, std::vector<double>{0.0}) == 1.0);
  BenchmarkFunction f5{BenchmarkId::f5_trig, 2};
  CHECK(benchmark_eval(f5, std::vector<double>{0.0, 0.0}) == 1.0);
  CHECK(benchmark_eval({BenchmarkId::runge, 1, 1, 1}, std::vector<double>{0.5}, std::vector<int>{1}) ==
        doctest::Approx(-0.64).epsilon(1e-15));
  BenchmarkFunction f3{BenchmarkId::f3_perturbed_runge, 3};
  CHECK(benchmark_eval(f3, std::vector<double>{1, 1, 1}) ==
        doctest::Approx(1.0 / (1.0 + std::pow(5 + 5.0 / 8 + 5.0 / 27, 2))));
  BenchmarkFunction f4{BenchmarkId::f4_shifted_runge_m, 2};
  f4.a = 1.25;
  CHECK(benchmark_eval(f4, std::vector<double>{0, 0}) == doctest::Approx(1.0 / (2 * 1.5625)));
  BenchmarkFunction f1{BenchmarkId::f1_shifted_pole, 2};
  f1.r = 1.25;
  CHECK(benchmark_eval(f1, std::vector<double>{0, 0.5}) == doctest::Approx(1.0 / (1.5625 + 0.25)));
}

TEST_CASE("analytic derivatives agree with finite differences") {
  BenchmarkFunction runge{BenchmarkId::runge, 3, 3.0, 1.0};
  BenchmarkFunction f1{BenchmarkId::f1_shifted_pole, 2};
  f1.r = 1.5;
  BenchmarkFunction f5{BenchmarkId::f5_trig, 2};
  f5.k1 = 1.0;
  f5.k2 = 0.5;
  const double h = 1e-5;
  for (const auto* f : {&runge, &f1, &f5}) {
    std::vector<double> x(f->dim);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.3 - 0.25 * static_cast<double>(i);
    for (std::size_t i = 0; i < f->dim; ++i) {
      std::vector<int> ei(f->dim, 0);
      ei[i] = 1;
      const double fd = oracle::central_difference(
          [&](const std::vector<double>& y) { return benchmark_eval(*f, y); }, x, i, h);
      CHECK(benchmark_eval(*f, x, ei) == doctest::Approx(fd).epsilon(1e-7));
      for (std::size_t j = 0; j < f->dim; ++j) {
        std::vector<int> eij = ei;
        eij[j] += 1;
        const double fd2 = oracle::central_difference(
            [&](const std::vector<double>& y) { return benchmark_eval(*f, y, ei); }, x, j, h);
        CHECK(benchmark_eval(*f, x, eij) == doctest::Approx(fd2).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("unsupported derivative requests and parameters") {
  BenchmarkFunction f3{BenchmarkId::f3_perturbed_runge, 2};
  CHECK_THROWS_AS(benchmark_eval(f3, std::vector<double>{0, 0}, std::vector<int>{1, 0}), std::invalid_argument);
  BenchmarkFunction runge{BenchmarkId::runge, 2};
  CHECK_THROWS_AS(benchmark_eval(runge, std::vector<double>{0, 0}, std::vector<int>{2, 1}), std::invalid_argument);
  BenchmarkFunction f1{BenchmarkId::f1_shifted_pole, 2};
  f1.r = 0.9;
  CHECK_THROWS_AS(f1.validate(), std::invalid_argument);
  BenchmarkFunction f4{BenchmarkId::f4_shifted_runge_m, 2};
  f4.a = 1.0;
  CHECK_THROWS_AS(f4.validate(), std::invalid_argument);
  CHECK_THROWS_AS(parse_benchmark_id("f9"), std::invalid_argument);
  CHECK(parse_benchmark_id("f4") == BenchmarkId::f4_shifted_runge_m);
}

TEST_CASE("optimal rates") {
  BenchmarkFunction runge{BenchmarkId::runge, 3, 1.0, 1.0};
  CHECK(*optimal_rho(runge, LpDegree::two()) == doctest::Approx(2.414).epsilon(2e-4));
  runge.dim = 4;
  CHECK(*optimal_rho(runge, LpDegree::one()) == doctest::Approx(1.618).epsilon(2e-4));
  runge.r = 3.0;
  CHECK(*optimal_rho(runge, LpDegree::infinity()) == doctest::Approx(1.387).epsilon(2e-4));
  runge.r = std::sqrt(10.0);
  CHECK(*optimal_rho(runge, LpDegree::two()) == doctest::Approx(1.365).epsilon(2e-4));
  CHECK_FALSE(optimal_rho(runge, LpDegree::real(1.5)).has_value());

  BenchmarkFunction f1{BenchmarkId::f1_shifted_pole, 2};
  f1.r = 1.25;
  CHECK(*optimal_rho(f1, LpDegree::one()) == 1.25);
  CHECK(*optimal_rho(f1, LpDegree::infinity()) == doctest::Approx(0.25 + std::sqrt(1.0625)));
  CHECK(*optimal_rho(f1, LpDegree::two()) == *optimal_rho(f1, LpDegree::infinity()));

  BenchmarkFunction f4{BenchmarkId::f4_shifted_runge_m, 2};
  f4.a = 1.25;
  CHECK(*optimal_rho(f4, LpDegree::two()) == 2.0518);
  CHECK(*optimal_rho(f4, LpDegree::infinity()) == 2.1531);
  f4.dim = 3;
  CHECK_FALSE(optimal_rho(f4, LpDegree::two()).has_value());
  f4.dim = 2;
  f4.a = 1.125;
  CHECK_FALSE(optimal_rho(f4, LpDegree::two()).has_value());

  BenchmarkFunction f3{BenchmarkId::f3_perturbed_runge, 4};
  CHECK(*optimal_rho(f3, LpDegree::two()) == doctest::Approx(0.2 + std::sqrt(1.04)));
  CHECK_FALSE(optimal_rho(BenchmarkFunction{BenchmarkId::f5_trig, 2}, LpDegree::two()).has_value());
}

TEST_CASE("uniform generator is reproducible and in range") {
  UniformCube a(42), b(42);
  const auto pa = a.points(3, 500), pb = b.points(3, 500);
  CHECK(pa == pb);
  for (double v : pa) CHECK((v >= -1.0 && v < 1.0));
  const auto longer = UniformCube(42).points(3, 600);
  CHECK(std::equal(pa.begin(), pa.end(), longer.begin()));
}

TEST_CASE("lebesgue estimate basics") {
  const auto single = build_grid(MultiIndexSet::from_indices(2, {{0, 0}}), {{{1.0}}, {{1.0}}});
  CHECK(lebesgue_estimate(*single, 100, 1) == doctest::Approx(1.0).epsilon(1e-15));
  const auto g = make_lp_grid(2, 6, LpDegree::two(), NodeFamily::leja_ordered_chebyshev_lobatto);
  CHECK(lebesgue_estimate(*g, 200, 3) >= 1.0 - 1e-12);
  const auto big = make_lp_grid(2, 80, LpDegree::infinity(), NodeFamily::leja_ordered_chebyshev_lobatto);
  CHECK_THROWS_AS(lebesgue_estimate(*big, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(lebesgue_estimate(*g, 0, 0), std::invalid_argument);
}

TEST_CASE("Chebyshev-Lobatto n=4 against a dense Lagrange oracle") {
  const auto cl = chebyshev_lobatto(4);
  const auto g = build_grid(make_lp_set(1, 4, LpDegree::infinity()), {cl});
  const double estimate = lebesgue_estimate(*g, 10000, 0);
  const double reference = oracle::lebesgue_1d_dense(cl.points, 200001);
  CHECK(estimate == doctest::Approx(reference).epsilon(0.02));
  CHECK(chebyshev_lebesgue_asymptote(4) == doctest::Approx(1.98712).epsilon(1e-5));
}

TEST_CASE("lebesgue estimate is monotone in the sample count") {
  const auto g = make_lp_grid(2, 8, LpDegree::two(), NodeFamily::leja_ordered_chebyshev_lobatto);
  double prev = 0;
  for (std::size_t n : {10, 100, 1000, 3000}) {
    const double v = lebesgue_estimate(*g, n, 5);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("first-order Lebesgue constant in 1D equals sum of value and derivative sups") {
  const auto cl = chebyshev_lobatto(5);
  const auto g = build_grid(make_lp_set(1, 5, LpDegree::infinity()), {cl});
  const double l0 = lebesgue_estimate(*g, 4001, 0, 0);
  const double l1 = lebesgue_estimate(*g, 4001, 0, 1);
  // derivative part by differencing the Lagrange basis sum at the same samples
  double dsup = 0;
  std::vector<double> out(g->size());
  for (int s = 0; s < 4001; ++s) {
    const std::vector<double> x{-1.0 + 2.0 * s / 4000.0};
    lagrange_basis_values(*g, x, std::vector<int>{1}, out);
    double sum = 0;
    for (double v : out) sum += std::abs(v);
    dsup = std::max(dsup, sum);
  }
  CHECK(l1 == doctest::Approx(l0 + dsup).epsilon(1e-14));
  CHECK(dsup > 5.0);
}

TEST_CASE("maximum-degree Lebesgue constants grow like a power of log n") {
  for (std::size_t m = 1; m <= 3; ++m) {
    double c = 0;
    // n = 2 is pre-asymptotic; C is taken at n = 4.
    for (int n : {4, 8, 12, 16, 32}) {
      if ((m == 2 && n > 16) || (m == 3 && n > 12)) continue;
      const auto axis = leja_order(chebyshev_lobatto(n));
      const auto g = build_grid(make_lp_set(m, n, LpDegree::infinity()), std::vector<Nodes1D>(m, axis));
      const double lam = lebesgue_estimate(*g, m == 1 ? 10000 : 3000, 7);
      const double ratio = lam / std::pow(1.0 + std::log(n + 1.0), static_cast<double>(m));
      if (c == 0) c = ratio;
      CHECK(ratio <= 1.25 * c);
    }
  }
}

TEST_CASE("fit_rate on exact geometric data") {
  std::vector<int> n;
  std::vector<double> e;
  for (int k = 1; k <= 20; ++k) {
    n.push_back(k);
    e.push_back(5.0 * std::pow(2.0, -k));
  }
  const auto fit = fit_rate(n, e);
  CHECK(fit.c == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(fit.rho == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.n_lo == 1);
  CHECK(fit.n_hi == 20);
}

TEST_CASE("fit_rate filtering") {
  // plateau prefix and saturated tail are dropped
  const std::vector<int> n{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<double> e{1.0, 2.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 1e-14, 1e-15};
  const auto fit = fit_rate(n, e);
  CHECK(fit.n_lo == 2);
  CHECK(fit.n_hi == 7);
  CHECK_THROWS_AS(fit_rate(std::vector<int>{1, 2, 3}, std::vector<double>{1, 0.5, 0.25}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(std::vector<int>{1, 2, 3, 4, 5}, std::vector<double>{1, 0.5, 1e-14, 1e-15, 0}),
                  std::invalid_argument);
}

TEST_CASE("convergence run on a member of Pi_A is exact") {
  // cos(0) + sin(0) is the constant 1
  BenchmarkFunction one{BenchmarkId::f5_trig, 3};
  one.k1 = 0.0;
  one.k2 = 0.0;
  ConvergenceOptions opts;
  opts.samples = 1000;
  opts.seed = 1;
  for (const auto& p : {LpDegree::one(), LpDegree::two(), LpDegree::infinity()}) {
    const auto rec = convergence_run(one, p, NodeFamily::leja_ordered_chebyshev_lobatto, {0, 1, 2, 5}, opts);
    for (const auto& row : rec.rows) CHECK(row.error <= 1e-9);
  }
  opts.deriv_order = {0, 1, 0};
  const auto rec = convergence_run(one, LpDegree::two(), NodeFamily::leja, {0, 3}, opts);
  for (const auto& row : rec.rows) CHECK(row.error <= 1e-9);
}

TEST_CASE("convergence run on Runge in 1D") {
  ConvergenceOptions opts;
  opts.samples = 10000;
  opts.seed = 3;
  std::vector<int> degrees;
  for (int n = 2; n <= 30; ++n) degrees.push_back(n);
  const auto rec = convergence_run({BenchmarkId::runge, 1, 1, 1}, LpDegree::two(),
                                   NodeFamily::leja_ordered_chebyshev_lobatto, degrees, opts);
  // Errors of the even Runge function fall in odd/even pairs, so the decrease
  // is checked two degrees apart.
  for (std::size_t k = 2; k + 2 < rec.rows.size(); ++k) CHECK(rec.rows[k + 2].error < rec.rows[k].error);
  CHECK(rec.rows.back().error < 1e-8);
  const auto fit = fit_rate(rec);
  CHECK(fit.rho == doctest::Approx(2.414).epsilon(0.03));
}

TEST_CASE("convergence run validation and reproducibility") {
  ConvergenceOptions opts;
  opts.samples = 200;
  opts.seed = 9;
  const BenchmarkFunction runge{BenchmarkId::runge, 2, 1, 1};
  const auto family = NodeFamily::leja_ordered_chebyshev_lobatto;
  CHECK_THROWS_AS(convergence_run(runge, LpDegree::two(), family, {4, 3}, opts), std::invalid_argument);
  CHECK_THROWS_AS(convergence_run(runge, LpDegree::two(), family, {}, opts), std::invalid_argument);
  opts.deriv_order = {1, 2};
  CHECK_THROWS_AS(convergence_run(runge, LpDegree::two(), family, {2, 3}, opts), std::invalid_argument);
  opts.deriv_order = {1, 0};
  const auto a = to_csv(convergence_run(runge, LpDegree::two(), family, {2, 4, 6, 8}, opts));
  const auto b = to_csv(convergence_run(runge, LpDegree::two(), family, {2, 4, 6, 8}, opts));
  CHECK(a == b);
  CHECK(a.find("# deriv_order: 1,0") != std::string::npos);
  CHECK(a.find("n,num_coeffs,error\n") != std::string::npos);
}

TEST_CASE("points are shared across families and p for the same seed and degree") {
  ConvergenceOptions opts;
  opts.samples = 50;
  opts.seed = 4;
  const BenchmarkFunction f{BenchmarkId::f3_perturbed_runge, 2};
  // At degree 0 every interpolant is the constant f(1, 1); the error is then
  // a function of the sample points alone.
  const auto a = convergence_run(f, LpDegree::two(), NodeFamily::leja_ordered_chebyshev_lobatto, {0}, opts);
  const auto b = convergence_run(f, LpDegree::one(), NodeFamily::leja, {0}, opts);
  CHECK(a.rows[0].error == b.rows[0].error);
}

TEST_CASE("serialisation formats") {
  RateFit fit{5.0, 2.0, 1.0, 3, 9, 7};
  CHECK(to_json(fit) == "{\"c\": 5, \"rho\": 2, \"r_squared\": 1, \"fit_range\": [3, 9]}\n");
  std::vector<LebesgueRow> rows{{2, LpDegree::infinity(), 4, 25, 3.25}};
  CHECK(to_csv(rows) == "m,p,n,num_coeffs,lambda\n2,inf,4,25,3.25\n");
}

}
