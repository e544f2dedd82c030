#include <doctest.h>

#include <random>
#include <set>

#include "hermnuc/errors.hpp"
#include "hermnuc/multi_index.hpp"

using namespace hermnuc;

TEST_CASE("multi-index basics") {
  const MultiIndex nu{2, 0, 3};
  CHECK(nu.dimension() == 3);
  CHECK(nu.degree() == 5);
  CHECK(nu.to_string() == "(2,0,3)");
  CHECK_THROWS_AS(MultiIndex({1, -1}), InvalidArgument);
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), InvalidArgument);
}

TEST_CASE("graded enumeration visits every index once") {
  for (int n = 1; n <= 4; ++n) {
    for (int cutoff = 0; cutoff <= 8; ++cutoff) {
      const auto all = enumerate_graded(n, cutoff);
      CHECK(all.size() == simplex_size(n, cutoff));
      const std::set<MultiIndex> unique(all.begin(), all.end());
      CHECK(unique.size() == all.size());
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
      for (const auto& nu : all) CHECK(nu.degree() <= cutoff);
    }
  }
  CHECK(simplex_size(2, 20) == 231);
  CHECK(simplex_size(3, 30) == 5456);
}

TEST_CASE("graded order is fixed") {
  const auto all = enumerate_graded(2, 2);
  const std::vector<MultiIndex> expected{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(all == expected);
}

TEST_CASE("index set lookup agrees with enumeration") {
  const IndexSet set(3, 6);
  for (std::size_t i = 0; i < set.size(); ++i) CHECK(set.position(set[i]) == i);
  CHECK_FALSE(set.position(MultiIndex{7, 0, 0}).has_value());

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(0, 6);
  for (int t = 0; t < 200; ++t) {
    const MultiIndex nu{entry(rng), entry(rng), entry(rng)};
    CHECK(set.position(nu).has_value() == (nu.degree() <= 6));
  }
}
