#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/nuclearity.hpp"
#include "hermnuc/operator.hpp"

using namespace hermnuc;

namespace {

double geometric_heat_sum(int cutoff) {
  double s = 0.0;
  for (int k = 0; k <= cutoff; ++k) s += std::exp(-(2.0 * k + 1));
  return s;
}

NuclearDecomposition decompose(const Symbol& m, int cutoff, double p1 = 2, double p2 = 2,
                               double r = 1, double tol = 1e-12) {
  const QuadratureGrid grid(m.dimension(), default_nodes(cutoff));
  return decompose_kernel(assemble_kernel(m, cutoff, grid), p1, p2, r, tol);
}

}  // namespace

TEST_CASE("lp_norm") {
  const QuadratureGrid grid(1, 15);
  std::vector<double> phi0(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) phi0[i] = hermite_function_1d(0, grid.point(i)[0]);
  CHECK(std::abs(lp_norm(grid, phi0, 2) - 1.0) <= 1e-10);
  // Q odd: 0 is a node.
  CHECK(std::abs(lp_norm(grid, phi0, kInfinity) - std::pow(std::numbers::pi, -0.25)) <= 1e-12);
  std::vector<double> scaled(phi0);
  for (auto& v : scaled) v *= -3.5;
  for (double p : {1.0, 1.5, 2.0, 4.0, kInfinity}) {
    CHECK(std::abs(lp_norm(grid, scaled, p) - 3.5 * lp_norm(grid, phi0, p)) <= 1e-12);
  }
  // ||phi0||_1 = pi^{-1/4} sqrt(2 pi); the integrand is not polynomial times a
  // Gaussian, so this is only a quadrature approximation that improves with Q.
  const double l1 = std::pow(std::numbers::pi, -0.25) * std::sqrt(2 * std::numbers::pi);
  CHECK(std::abs(lp_norm(grid, phi0, 1) - l1) <= 1e-6);
  const QuadratureGrid fine(1, 60);
  std::vector<double> fine_phi0(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) fine_phi0[i] = hermite_function_1d(0, fine.point(i)[0]);
  CHECK(std::abs(lp_norm(fine, fine_phi0, 1) - l1) <= 1e-10);
  CHECK_THROWS_AS(lp_norm(grid, phi0, 0.5), InvalidArgument);
  CHECK(conjugate_exponent(2) == 2);
  CHECK(conjugate_exponent(4) == doctest::Approx(4.0 / 3));
  CHECK(std::isinf(conjugate_exponent(1)));
  CHECK(conjugate_exponent(kInfinity) == 1);
}

TEST_CASE("decomposition of a delta symbol") {
  for (const MultiIndex& nu0 : {MultiIndex{0}, MultiIndex{3}, MultiIndex{1, 2}}) {
    const auto d = decompose(delta_symbol(nu0), 6);
    REQUIRE(d.rank() == 1);
    CHECK(std::abs(d.quasi_norm_bound - 1.0) <= 1e-8);
    // h and g are multiples of phi_nu0.
    const auto& grid = d.grid;
    double ch = 0, cg = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double phi = hermite_function_nd(nu0, grid.point(i));
      if (std::abs(phi) > 0.1) {
        ch = d.h_factor(0)[i] / phi;
        cg = d.g_factor(0)[i] / phi;
        break;
      }
    }
    CHECK(std::abs(ch * cg - 1.0) <= 1e-8);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double phi = hermite_function_nd(nu0, grid.point(i));
      CHECK(std::abs(d.h_factor(0)[i] - ch * phi) <= 1e-10);
    }
    CHECK(verify_symbol_decomposition(delta_symbol(nu0), d, 6).max_residual < 1e-8);
    CHECK(std::abs(recover_multiplier_symbol(d, nu0) - 1.0) <= 1e-8);
    CHECK(std::abs(recover_multiplier_symbol(d, MultiIndex::zero(nu0.dimension())) -
                   (nu0 == MultiIndex::zero(nu0.dimension()) ? 1.0 : 0.0)) <= 1e-8);
  }
}

TEST_CASE("decomposition of the identity on the span") {
  const auto d = decompose(constant_symbol(1, 1), 4);
  REQUIRE(d.rank() == 5);
  for (Eigen::Index k = 0; k < 5; ++k) CHECK(std::abs(d.singular_values(k) - 1.0) <= 1e-8);
  CHECK(std::abs(d.quasi_norm_bound - 5.0) <= 1e-6);
  CHECK(verify_symbol_decomposition(constant_symbol(1, 1), d, 4).max_residual < 1e-8);
}

TEST_CASE("decomposition of the heat symbol") {
  const auto d = decompose(heat_symbol(1, 1), 10);
  CHECK(std::abs(d.quasi_norm_bound - geometric_heat_sum(10)) <= 1e-6);
  CHECK(std::abs(d.quasi_norm_bound - d.singular_values.sum()) <= 1e-8);
  CHECK(std::abs(recover_multiplier_symbol(d, MultiIndex{2}) - std::exp(-5.0)) <= 1e-7);
  CHECK(verify_symbol_decomposition(heat_symbol(1, 1), d, 10).max_residual < 1e-7);
}

TEST_CASE("zero symbol") {
  const auto d = decompose(constant_symbol(2, 0), 3);
  CHECK(d.rank() == 0);
  CHECK(d.quasi_norm_bound == 0.0);
  const auto report = verify_symbol_decomposition(constant_symbol(2, 0), d, 3);
  CHECK(report.max_residual == 0.0);
  CHECK(report.checked == simplex_size(2, 3) * d.grid.size());
}

TEST_CASE("reconstruction and Hilbert optimality across families") {
  for (int n : {1, 2}) {
    const int cutoff = n == 1 ? 10 : 5;
    for (const auto& m : {heat_symbol(n, 0.5), power_symbol(n, 2), expression_symbol("x1*exp(-nu1)", n),
                          expression_symbol("(1+x1^2)^(-1)*exp(-lambda/4)", n)}) {
      CAPTURE(m.describe());
      const auto d = decompose(m, cutoff);
      CHECK(d.reconstruction_error <= 1e-12 * d.kernel_max * 10);
      CHECK(std::abs(d.quasi_norm_bound - d.singular_values.sum()) <= 1e-8);
      for (Eigen::Index k = 0; k < d.h.size(); ++k) CHECK(std::isfinite(d.h.data()[k]));
    }
  }
}

TEST_CASE("quasi-norm is non-increasing in tol") {
  const QuadratureGrid grid(1, default_nodes(20));
  const auto kernel = assemble_kernel(power_symbol(1, 1), 20, grid);
  double previous = INFINITY;
  std::size_t previous_rank = 1000;
  for (double tol : {1e-14, 1e-12, 1e-8, 1e-4, 1e-2, 0.1, 0.5}) {
    const auto d = decompose_kernel(kernel, 2, 2, 1, tol);
    CHECK(d.quasi_norm_bound <= previous + 1e-14);
    CHECK(d.rank() <= previous_rank);
    previous = d.quasi_norm_bound;
    previous_rank = d.rank();
  }
  for (double p : {1.5, 3.0}) {
    double prev = INFINITY;
    for (double tol : {1e-12, 1e-6, 1e-2}) {
      const auto d = decompose_kernel(kernel, p, p, 0.5, tol);
      CHECK(d.quasi_norm_bound <= prev);
      prev = d.quasi_norm_bound;
    }
  }
}

TEST_CASE("non-Hilbert exponents only bound from above") {
  const auto d2 = decompose(heat_symbol(1, 1), 10);
  const auto d = decompose(heat_symbol(1, 1), 10, 4.0 / 3, 4, 1);
  CHECK(std::abs(d.quasi_norm_bound -
                 factor_quasi_norm(d.grid, d.h, d.g, 4.0 / 3, 4, 1)) <= 1e-15);
  CHECK(d.quasi_norm_bound > 0.0);
  // r < 1 grows the quasi-norm relative to r = 1.
  const auto half = decompose(heat_symbol(1, 1), 10, 2, 2, 0.5);
  CHECK(half.quasi_norm_bound >= d2.quasi_norm_bound);
}

TEST_CASE("reverse synthesis reproduces apply") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  for (const auto& m : {heat_symbol(1, 1), power_symbol(1, 2), expression_symbol("x1^2*exp(-nu1/3)", 1)}) {
    const int cutoff = 10;
    const auto d = decompose(m, cutoff);
    for (int t = 0; t < 20; ++t) {
      CoefficientVector c(1, cutoff);
      std::vector<double> values(c.size());
      for (auto& v : values) v = normal(rng);
      const auto f = inverse_transform_on_grid(CoefficientVector(c.basis_ptr(), values), d.grid);
      const auto rebuilt = synthesize(d, f);
      const auto direct = apply_on_grid(m, f, cutoff, d.grid);
      for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(rebuilt[i] - direct[i]) <= 1e-7);
    }
  }
}

TEST_CASE("invalid decomposition parameters") {
  const QuadratureGrid grid(1, 8);
  const auto kernel = assemble_kernel(heat_symbol(1, 1), 3, grid);
  CHECK_THROWS_AS(decompose_kernel(kernel, 2, 2, 1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(decompose_kernel(kernel, 2, 2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(decompose_kernel(kernel, 2, 2, 1.5), InvalidArgument);
  CHECK_THROWS_AS(decompose_kernel(kernel, 0.5, 2, 1), InvalidArgument);
}

TEST_CASE("saved decomposition directory") {
  const auto dir = std::filesystem::path(HERMNUC_TEST_DATA_DIR) / "decomposition";
  std::filesystem::remove_all(dir);
  const auto d = decompose(delta_symbol({2}), 4);
  save_decomposition(d, dir);
  std::ifstream in(dir / "manifest.json");
  const auto manifest = nlohmann::json::parse(in);
  CHECK(manifest["rank"] == 1);
  CHECK(std::abs(manifest["quasi_norm_bound"].get<double>() - 1.0) <= 1e-8);
  CHECK(std::filesystem::exists(dir / "h_0000.csv"));
  CHECK(std::filesystem::exists(dir / "g_0000.csv"));
}
