#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "dcnewton/kernels.hpp"
#include "dcnewton/newton.hpp"
#include "oracles.hpp"

using namespace dcnewton;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

const kernels::KernelTable* vector_table() {
  const auto* t = kernels::avx2();
  if (t == nullptr) MESSAGE("AVX2 kernels unavailable on this machine; equivalence checks skipped");
  return t;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("active table honours the scalar override") {
  const auto& active = kernels::active();
  CHECK((active.name == "scalar" || active.name == "avx2"));
}

TEST_CASE("row kernels are bitwise identical") {
  const auto* vec = vector_table();
  if (vec == nullptr) return;
  const auto& ref = kernels::scalar();
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n <= 37; ++n) {
    const auto src = random_vector(n, rng);
    auto a = random_vector(n, rng), b = a;
    ref.row_sub_div(a.data(), src.data(), n, 0.37);
    vec->row_sub_div(b.data(), src.data(), n, 0.37);
    CHECK(same_bits(a, b));

    auto x1 = random_vector(n, rng), y1 = random_vector(n, rng);
    auto x2 = x1, y2 = y1;
    ref.row_div_sub_transposed(x1.data(), y1.data(), n, -1.3);
    vec->row_div_sub_transposed(x2.data(), y2.data(), n, -1.3);
    CHECK(same_bits(x1, x2));
    CHECK(same_bits(y1, y2));
  }
}

TEST_CASE("line kernels are bitwise identical") {
  const auto* vec = vector_table();
  if (vec == nullptr) return;
  const auto& ref = kernels::scalar();
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 41; ++n) {
    const auto x = oracle::jittered_axis(n, rng);
    if (x.size() != n) continue;
    auto c1 = random_vector(n, rng), c2 = c1;
    ref.line_divided_differences(c1.data(), x.data(), n);
    vec->line_divided_differences(c2.data(), x.data(), n);
    CHECK(same_bits(c1, c2));

    auto y1 = random_vector(n, rng), y2 = y1;
    ref.line_divided_differences_transposed(y1.data(), x.data(), n);
    vec->line_divided_differences_transposed(y2.data(), x.data(), n);
    CHECK(same_bits(y1, y2));
  }
}

TEST_CASE("full pipelines agree bitwise between kernel tables") {
  const auto* vec = vector_table();
  if (vec == nullptr) return;
  const auto& ref = kernels::scalar();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 4);
    const auto set = oracle::random_downward_closed(m, 20 + 10 * static_cast<std::size_t>(trial), 9, rng);
    const auto grid = oracle::random_grid(set, rng);
    const auto values = random_vector(grid->size(), rng);

    auto c1 = values, c2 = values;
    divided_differences_in_place(*grid, c1, ref);
    divided_differences_in_place(*grid, c2, *vec);
    CHECK(same_bits(c1, c2));

    auto t1 = values, t2 = values;
    divided_differences_transposed_in_place(*grid, t1, ref);
    divided_differences_transposed_in_place(*grid, t2, *vec);
    CHECK(same_bits(t1, t2));

    const NewtonPolynomial poly(grid, c1);
    const auto pts = random_vector(m * 13, rng);
    std::vector<int> order(m, 0);
    order[static_cast<std::size_t>(trial) % m] = trial % 3;
    CHECK(same_bits(eval_batch(poly, pts, order, ref), eval_batch(poly, pts, order, *vec)));
  }
}

TEST_CASE("batched evaluation equals single-point evaluation bitwise") {
  std::mt19937_64 rng(8);
  const auto grid = make_lp_grid(3, 7, LpDegree::two(), NodeFamily::leja_ordered_chebyshev_lobatto);
  const NewtonPolynomial poly(grid, random_vector(grid->size(), rng));
  const auto pts = random_vector(3 * 11, rng);
  const std::vector<int> order{1, 0, 2};
  for (const auto* table : {&kernels::scalar(), kernels::avx2()}) {
    if (table == nullptr) continue;
    const auto batch = eval_batch(poly, pts, order, *table);
    const auto plain = eval_batch(poly, pts, {}, *table);
    for (std::size_t k = 0; k < 11; ++k) {
      const std::span<const double> x(pts.data() + 3 * k, 3);
      const double d = eval_derivative(poly, order, x);
      const double v = eval_iterative(poly, x);
      CHECK(std::memcmp(&batch[k], &d, sizeof d) == 0);
      CHECK(std::memcmp(&plain[k], &v, sizeof v) == 0);
    }
  }
}

}
