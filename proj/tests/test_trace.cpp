#include <doctest.h>

#include <cmath>
#include <random>

#include "hermnuc/errors.hpp"
#include "hermnuc/operator.hpp"
#include "hermnuc/trace.hpp"

using namespace hermnuc;

namespace {

std::vector<Symbol> builtin_families(int n) {
  const MultiIndex nu0 = n == 1 ? MultiIndex{2} : MultiIndex{1, 0};
  return {heat_symbol(n, 1.0), power_symbol(n, 2.0), delta_symbol(nu0), constant_symbol(n, 0.5),
          expression_symbol("x1", n), expression_symbol("exp(-x1^2)*(1+|nu|)^(-1)", n)};
}

}  // namespace

TEST_CASE("nuclear trace examples") {
  const QuadratureGrid g1(1, default_nodes(40));
  CHECK(std::abs(nuclear_trace(delta_symbol({7}), 40, g1) - 1.0) <= 1e-10);
  CHECK(std::abs(nuclear_trace(heat_symbol(1, 1), 40, g1) - 0.42545906411966077257) <= 1e-8);
  const QuadratureGrid g2(2, default_nodes(40));
  CHECK(std::abs(nuclear_trace(heat_symbol(2, 1), 40, g2) - 0.18101541524157761660) <= 1e-6);
  CHECK_THROWS_AS(nuclear_trace(heat_symbol(2, 1), 4, g1), InvalidArgument);
}

TEST_CASE("trace from decomposition") {
  const QuadratureGrid grid(1, default_nodes(4));
  const auto delta = decompose_kernel(assemble_kernel(delta_symbol({3}), 4, grid), 2, 2, 1);
  CHECK(std::abs(trace_from_decomposition(delta, grid) - 1.0) <= 1e-8);
  const auto ones = decompose_kernel(assemble_kernel(constant_symbol(1, 1), 4, grid), 2, 2, 1);
  CHECK(std::abs(trace_from_decomposition(ones, grid) - 5.0) <= 1e-6);
  const auto zero = decompose_kernel(assemble_kernel(constant_symbol(1, 0), 4, grid), 2, 2, 1);
  CHECK(trace_from_decomposition(zero, grid) == 0.0);
  CHECK_THROWS_AS(trace_from_decomposition(zero, QuadratureGrid(1, 20)), InvalidArgument);
}

TEST_CASE("spectral trace examples") {
  const QuadratureGrid grid(1, default_nodes(10));
  const auto heat = spectral_trace(heat_symbol(1, 1), 10, grid);
  REQUIRE(heat.eigenvalues.size() == 11);
  for (int k = 0; k <= 10; ++k) {
    CHECK(std::abs(heat.eigenvalues[static_cast<std::size_t>(k)].real() - std::exp(-(2.0 * k + 1))) <= 1e-7);
  }
  CHECK(std::abs(heat.spectral_sum - heat.trace_integral) <= 1e-8);
  CHECK(heat.spectral_matches);
  CHECK(heat.max_imaginary < 1e-8);

  const auto delta = spectral_trace(delta_symbol({4}), 10, grid);
  CHECK(std::abs(delta.eigenvalues[0].real() - 1.0) <= 1e-10);
  for (std::size_t i = 1; i < delta.eigenvalues.size(); ++i) CHECK(std::abs(delta.eigenvalues[i]) <= 1e-10);
  CHECK(std::abs(delta.spectral_sum - 1.0) <= 1e-10);

  const auto position = spectral_trace(expression_symbol("x1", 1), 10, grid);
  CHECK(std::abs(position.trace_integral) <= 1e-8);
  CHECK(std::abs(position.spectral_sum) <= 1e-8);

  const auto json = heat.to_json();
  CHECK(json["truncated"] == true);
  CHECK(json.contains("tolerances_met"));
  CHECK(json["eigenvalues"].size() == 11);
}

TEST_CASE("multiplier trace identity") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  for (int n : {1, 2}) {
    const int cutoff = 12;
    const QuadratureGrid grid(n, default_nodes(cutoff));
    const IndexSet basis(n, cutoff);
    for (const auto& m : {heat_symbol(n, 0.3), power_symbol(n, 1.0), constant_symbol(n, -1.5)}) {
      double expected = 0.0;
      for (const auto& nu : basis) expected += m(nu);
      CHECK(std::abs(nuclear_trace(m, cutoff, grid) - expected) <= 1e-9);
    }
  }
}

TEST_CASE("trace linearity") {
  const int cutoff = 10;
  const QuadratureGrid grid(2, default_nodes(cutoff));
  const auto m1 = heat_symbol(2, 0.5);
  const auto m2 = expression_symbol("x1*x2 + exp(-x1^2)/(1+lambda)", 2);
  const double a = nuclear_trace(m1, cutoff, grid);
  const double b = nuclear_trace(m2, cutoff, grid);
  const double c = nuclear_trace(linear_combination(0.7, m1, -1.3, m2), cutoff, grid);
  CHECK(std::abs(c - (0.7 * a - 1.3 * b)) <= 1e-10);
}

TEST_CASE("multiplier eigenvalues match the symbol") {
  const int cutoff = 8;
  const QuadratureGrid grid(2, default_nodes(cutoff));
  const auto m = power_symbol(2, 1.5);
  const auto report = spectral_trace(m, cutoff, grid);
  std::vector<double> expected;
  for (const auto& nu : IndexSet(2, cutoff)) expected.push_back(m(nu));
  std::sort(expected.rbegin(), expected.rend());
  REQUIRE(report.eigenvalues.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(report.eigenvalues[i].real() - expected[i]) <= 1e-7);
    CHECK(std::abs(report.eigenvalues[i].imag()) <= 1e-8);
  }
}

TEST_CASE("three routes agree for the built-in families") {
  for (int n : {1, 2}) {
    for (int cutoff : {4, n == 1 ? 20 : 12}) {
      const QuadratureGrid grid(n, default_nodes(cutoff));
      for (const auto& m : builtin_families(n)) {
        CAPTURE(m.describe());
        CAPTURE(cutoff);
        const auto report = spectral_trace(m, cutoff, grid);
        const double tol = 1e-6 * (1 + std::abs(report.trace_integral));
        CHECK(std::abs(report.trace_integral - report.trace_matrix) <= tol);
        CHECK(std::abs(report.trace_integral - report.trace_decomposition) <= tol);
        CHECK(std::abs(report.trace_matrix - report.trace_decomposition) <= tol);
        CHECK(std::abs(report.spectral_sum - report.trace_integral) <= 1e-6);
      }
    }
  }
}

TEST_CASE("r condition") {
  CHECK(r_condition(2) == 1.0);
  CHECK(r_condition(1) == doctest::Approx(2.0 / 3));
  CHECK(r_condition(kInfinity) == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(r_condition(0.5), InvalidArgument);
}
