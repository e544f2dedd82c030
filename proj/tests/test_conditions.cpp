#include <doctest.h>

#include <cmath>
#include <random>

#include "hermnuc/conditions.hpp"
#include "hermnuc/errors.hpp"
#include "hermnuc/nuclearity.hpp"

using namespace hermnuc;

TEST_CASE("select_regime examples") {
  CHECK(select_regime(2, 2) == 1);
  CHECK(select_regime(4.0 / 3, 4) == 5);
  CHECK(select_regime(2, 5) == 7);
}

TEST_CASE("select_regime covers all nine cells") {
  const double fourth = 4.0 / 3;
  // Columns: p1 > 4/3, p1 = 4/3, 1 < p1 < 4/3. Rows: p2 < 4, p2 = 4, p2 > 4.
  const std::vector<std::vector<double>> columns{{1.34, 2, 10, 1e6}, {fourth}, {1.0001, 1.2, 1.333}};
  const std::vector<std::vector<double>> rows{{1, 2, 3.999}, {4}, {4.001, 8, kInfinity}};
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      for (double p1 : columns[col]) {
        for (double p2 : rows[row]) {
          CAPTURE(p1);
          CAPTURE(p2);
          CHECK(select_regime(p1, p2) == 3 * row + col + 1);
        }
      }
    }
  }
}

TEST_CASE("unsupported exponents") {
  CHECK_THROWS_AS(select_regime(1, 2), UnsupportedExponent);
  CHECK_THROWS_AS(select_regime(0.5, 2), UnsupportedExponent);
  CHECK_THROWS_AS(select_regime(kInfinity, 2), UnsupportedExponent);
  CHECK_THROWS_AS(select_regime(2, 0.9), UnsupportedExponent);
  CHECK_THROWS_AS(select_regime(std::nan(""), 2), UnsupportedExponent);
}

TEST_CASE("regime exponents") {
  CHECK(regime(2, 2).alpha == 0.0);
  CHECK(regime(2, 2).log_power == 0);
  CHECK(regime(4.0 / 3, 4).alpha == -0.25);
  CHECK(regime(4.0 / 3, 4).log_power == 2);
  CHECK(regime(2, kInfinity).alpha == doctest::Approx(0.5 * (1.0 / 3 - 0.5)));
  CHECK(regime(1.2, kInfinity).alpha == doctest::Approx((1 / 1.2 - 2) / 6));
  CHECK(regime_table().size() == 9);
}

TEST_CASE("partition classifier") {
  const RegimePartition part(2, 5);
  CHECK(part.classify({1, 2}) == 2);
  CHECK(part.classify({7, 9}) == 0);
  CHECK(part.classify({5, 6}) == 1);
  CHECK_THROWS_AS(RegimePartition(2, 0), InvalidArgument);
  const RegimePartition custom(2, 5, [](const MultiIndex& nu) { return nu.degree() > 3 ? 0 : 2; });
  CHECK(classify(custom, {1, 2}) == 2);
  CHECK(classify(custom, {3, 1}) == 0);
}

TEST_CASE("partition exactness") {
  for (int n : {1, 2, 3}) {
    for (int k : {1, 3, 10}) {
      const RegimePartition part(n, k);
      std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 1);
      const auto all = enumerate_graded(n, n == 3 ? 20 : 30);
      for (const auto& nu : all) {
        const int s = part.classify(nu);
        REQUIRE(s >= 0);
        REQUIRE(s <= n);
        ++counts[static_cast<std::size_t>(s)];
      }
      std::size_t total = 0;
      for (auto c : counts) total += c;
      CHECK(total == all.size());
    }
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> idx(0, 50);
  const RegimePartition part(4, 7);
  for (int t = 0; t < 10000; ++t) {
    const MultiIndex nu{idx(rng), idx(rng), idx(rng), idx(rng)};
    int small = 0;
    for (int e : nu.entries()) small += e <= 7;
    CHECK(part.classify(nu) == small);
  }
}

TEST_CASE("kappa examples") {
  const RegimePartition part(1, 10);
  const auto delta = kappa(delta_symbol({3}), 2, 2, 1, part, 40);
  CHECK(delta.partial_sums.back() == 1.0);
  CHECK(delta.verdict == Verdict::kConverged);

  const auto heat = kappa(heat_symbol(1, 1), 2, 2, 1, part, 60);
  CHECK(std::abs(heat.partial_sums.back() - 1.0 / (2 * std::sinh(1.0))) <= 1e-6);
  CHECK(heat.verdict == Verdict::kConverged);
  CHECK(heat.ratio == doctest::Approx(std::exp(-2.0)));

  const auto ones = kappa(constant_symbol(1, 1), 2, 2, 1, part, 60);
  CHECK(ones.verdict == Verdict::kDiverging);
  CHECK(ones.partial_sums.back() == 61.0);

  // Polynomial decay never meets the geometric criterion at this depth.
  const auto power = kappa(power_symbol(1, 3), 2, 2, 1, part, 60);
  CHECK(std::abs(power.partial_sums.back() - 1.2019247154522812661) <= 1e-12);
  CHECK(power.verdict == Verdict::kInconclusive);
  CHECK(power.ratio < 1.0);

  CHECK_THROWS_AS(kappa(expression_symbol("x1", 1), 2, 2, 1, part, 5), InvalidArgument);
  CHECK_THROWS_AS(kappa(heat_symbol(1, 1), 1, 2, 1, part, 5), UnsupportedExponent);
  CHECK(kappa(heat_symbol(1, 1), 2, 2, 1, part, 3).verdict == Verdict::kInconclusive);
}

TEST_CASE("kappa summands are non-negative and partial sums monotone") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> exps(1.01, 9.0);
  for (int t = 0; t < 30; ++t) {
    const double p1 = exps(rng);
    const double p2 = t % 5 == 0 ? kInfinity : exps(rng);
    const RegimePartition part(2, 4);
    const auto report = kappa(expression_symbol("(1+|nu|)^(-3)*(nu1-2)", 2), p1, p2, 0.7, part, 25);
    for (std::size_t d = 1; d < report.partial_sums.size(); ++d) {
      CHECK(report.partial_sums[d] >= report.partial_sums[d - 1]);
    }
    CHECK(report.partial_sums.front() >= 0.0);
  }
}

TEST_CASE("kappa scaling and continuity in r") {
  const RegimePartition part(2, 3);
  const auto m = expression_symbol("exp(-|nu|)", 2);
  for (double c : {-2.0, 0.5, 3.0}) {
    for (double r : {0.3, 1.0}) {
      const auto base = kappa(m, 1.2, 5, r, part, 20).partial_sums.back();
      const auto scaled = kappa(linear_combination(c, m, 0.0, m), 1.2, 5, r, part, 20).partial_sums.back();
      CHECK(std::abs(scaled - std::pow(std::abs(c), r) * base) <= 1e-12 * scaled);
    }
  }
  // Finitely supported symbol: kappa is a finite sum of continuous functions of r.
  const Symbol support(2, SymbolKind::kMultiplier,
                       [](std::span<const double>, const MultiIndex& nu) {
                         return nu.degree() <= 8 ? 1.0 / (1 + nu[0] + 2 * nu[1]) : 0.0;
                       },
                       "test");
  for (int i = 0; i < 10; ++i) {
    const double r = 0.1 + 0.1 * i;
    const double a = kappa(support, 3, 3, r, part, 12).partial_sums.back();
    const double b = kappa(support, 3, 3, r - 1e-7, part, 12).partial_sums.back();
    CHECK(std::abs(a - b) <= 1e-4 * a);
    CHECK(std::isfinite(a));
  }
}

TEST_CASE("log guard") {
  CHECK(log_plus(0.0) == 1.0);
  CHECK(log_plus(1.0) == 1.0);
  CHECK(log_plus(100.0) == doctest::Approx(std::log(100.0)));
}

TEST_CASE("condition report JSON") {
  const RegimePartition part(1, 10);
  const auto json = kappa(heat_symbol(1, 1), 2, kInfinity, 1, part, 20).to_json();
  CHECK(json["parameters"]["p2"] == "inf");
  CHECK(json["regime_id"] == 7);
  CHECK(json["partial_sums"].size() == 21);
  CHECK(json["log_guard"].get<std::string>().find("max") != std::string::npos);
}
