#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/operator.hpp"

using namespace hermnuc;

namespace {

// Random element of the truncated span, sampled on the grid.
std::vector<double> random_span_samples(std::mt19937_64& rng, int n, int cutoff,
                                        const QuadratureGrid& grid) {
  std::normal_distribution<double> normal;
  CoefficientVector c(n, cutoff);
  std::vector<double> values(c.size());
  for (auto& v : values) v = normal(rng);
  return inverse_transform_on_grid(CoefficientVector(c.basis_ptr(), values), grid);
}

}  // namespace

TEST_CASE("apply examples") {
  const int cutoff = 8;
  const QuadratureGrid grid(1, default_nodes(cutoff));
  const auto phi2 = [](auto x) { return hermite_function_1d(2, x[0]); };
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> xs(-4, 4);
  const auto f = [](auto x) { return std::exp(-(x[0] - 0.5) * (x[0] - 0.5)); };
  const auto f0 = integrate(grid, [&](auto x) { return f(x) * hermite_function_1d(0, x[0]); });
  for (int t = 0; t < 20; ++t) {
    const double p = xs(rng);
    const std::span<const double> x(&p, 1);
    CHECK(std::abs(apply(constant_symbol(1, 1), phi2, cutoff, grid, x) - hermite_function_1d(2, p)) <= 1e-10);
    CHECK(std::abs(apply(delta_symbol({0}), f, cutoff, grid, x) - f0 * hermite_function_1d(0, p)) <= 1e-12);
    for (int mu = 0; mu <= cutoff; ++mu) {
      const auto phi = [mu](auto y) { return hermite_function_1d(mu, y[0]); };
      CHECK(std::abs(apply(heat_symbol(1, 0.7), phi, cutoff, grid, x) -
                     std::exp(-0.7 * (2 * mu + 1)) * hermite_function_1d(mu, p)) <= 1e-10);
    }
  }
}

TEST_CASE("kernel examples") {
  const QuadratureGrid grid(1, 8);
  const auto k0 = assemble_kernel(constant_symbol(1, 1), 0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      CHECK(std::abs(k0.entries(i, j) - hermite_function_1d(0, grid.point(i)[0]) *
                                            hermite_function_1d(0, grid.point(j)[0])) <= 1e-15);
    }
  }

  const QuadratureGrid grid2(2, 6);
  const auto kd = assemble_kernel(delta_symbol({1, 2}), 4, grid2);
  const auto& k = kd.entries;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < k.rows(); i += 3) {
    for (Eigen::Index j = 0; j < k.cols(); j += 5) {
      for (Eigen::Index a = 1; a < k.rows(); a += 7) {
        for (Eigen::Index b = 2; b < k.cols(); b += 11) {
          worst = std::max(worst, std::abs(k(i, j) * k(a, b) - k(i, b) * k(a, j)));
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
  CHECK(kd.is_symmetric(1e-10));
  CHECK_FALSE(assemble_kernel(expression_symbol("x1", 1), 3, grid).is_symmetric(1e-10));
}

TEST_CASE("kernel application agrees with apply") {
  std::mt19937_64 rng(21);
  for (int n : {1, 2}) {
    const int cutoff = n == 1 ? 10 : 6;
    const QuadratureGrid grid(n, default_nodes(cutoff));
    for (const auto& m : {heat_symbol(n, 0.5), power_symbol(n, 2.0), expression_symbol("x1*exp(-nu1)", n)}) {
      const auto kernel = assemble_kernel(m, cutoff, grid);
      for (int t = 0; t < 50; ++t) {
        const auto f = random_span_samples(rng, n, cutoff, grid);
        const auto via_kernel = apply_kernel(kernel, f);
        const auto direct = apply_on_grid(m, f, cutoff, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(via_kernel[i] - direct[i]));
        CHECK(worst <= 1e-8);
      }
    }
  }
}

TEST_CASE("apply_on_grid matches pointwise apply") {
  const int cutoff = 6;
  const QuadratureGrid grid(2, default_nodes(cutoff));
  const auto m = expression_symbol("exp(-x1^2)*(1+nu2)^(-1)", 2);
  const Function f = [](auto x) { return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2) * (1 + x[0]); };
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = f(grid.point(i));
  const auto on_grid = apply_on_grid(m, samples, cutoff, grid);
  for (std::size_t i = 0; i < grid.size(); i += 13) {
    CHECK(std::abs(on_grid[i] - apply(m, f, cutoff, grid, grid.point(i))) <= 1e-12);
  }
}

TEST_CASE("linearity in the symbol") {
  const int cutoff = 7;
  const QuadratureGrid grid(1, default_nodes(cutoff));
  const auto m1 = heat_symbol(1, 0.2);
  const auto m2 = expression_symbol("x1^2/(1+nu1)", 1);
  const auto combo = linear_combination(1.5, m1, -2.0, m2);
  const Function f = [](auto x) { return 1.0 / std::cosh(x[0]); };
  for (double p : {-2.0, -0.3, 0.0, 1.1, 3.0}) {
    const std::span<const double> x(&p, 1);
    const double lhs = apply(combo, f, cutoff, grid, x);
    const double rhs = 1.5 * apply(m1, f, cutoff, grid, x) - 2.0 * apply(m2, f, cutoff, grid, x);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("Galerkin matrices") {
  const QuadratureGrid grid(1, default_nodes(3));
  const auto lambda = coefficient_matrix(expression_symbol("lambda", 1), 3, grid);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(lambda.entries(i, j) - (i == j ? 2 * i + 1 : 0)) <= 1e-10);
    }
  }
  CHECK(lambda(MultiIndex{2}, MultiIndex{2}) == doctest::Approx(5.0));

  const QuadratureGrid grid2(2, default_nodes(5));
  const auto c = coefficient_matrix(constant_symbol(2, -3.25), 5, grid2);
  const auto size = c.entries.rows();
  CHECK((c.entries + 3.25 * Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff() <= 1e-10);

  const auto heat = coefficient_matrix(heat_symbol(2, 0.4), 5, grid2);
  Eigen::MatrixXd off = heat.entries;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("position operator is tridiagonal") {
  const int cutoff = 12;
  const QuadratureGrid grid(1, default_nodes(cutoff));
  const auto a = coefficient_matrix(expression_symbol("x1", 1), cutoff, grid);
  for (int mu = 0; mu <= cutoff; ++mu) {
    for (int nu = 0; nu <= cutoff; ++nu) {
      double expected = 0.0;
      if (mu == nu + 1) expected = std::sqrt((nu + 1) / 2.0);
      if (mu + 1 == nu) expected = std::sqrt(nu / 2.0);
      CHECK(std::abs(a.entries(mu, nu) - expected) <= 1e-9);
    }
  }
}

TEST_CASE("symbol samples reject non-finite values") {
  const QuadratureGrid grid(1, 6);
  const IndexSet basis(1, 3);
  CHECK_THROWS_AS(symbol_samples(expression_symbol("1/nu1", 1), basis, grid), EvaluationError);
  CHECK_THROWS_AS(symbol_samples(heat_symbol(2, 1), basis, grid), InvalidArgument);
}

TEST_CASE("kernel CSV") {
  const QuadratureGrid grid(1, 2);
  std::ostringstream csv;
  assemble_kernel(constant_symbol(1, 1), 1, grid).write_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("i,j,x1,y1,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
