#include <doctest.h>

#include <random>
#include <stdexcept>

#include "extremal/setcore.hpp"

using namespace extremal;

TEST_SUITE("setcore") {

TEST_CASE("subset construction and rendering") {
  auto s = Subset::of({1, 3, 4}, 5);
  CHECK(s.mask() == 0b01101);
  CHECK(s.size() == 3);
  CHECK(s.str() == "{1,3,4}");
  CHECK(Subset::empty(4).str() == "{}");
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK_FALSE(s.contains(0));
  CHECK(s.complement() == Subset::of({2, 5}, 5));
  CHECK(Subset::full(63).size() == 63);
  CHECK_THROWS_AS(Subset(0b100, 2), std::invalid_argument);
  CHECK_THROWS_AS(Subset::of({6}, 5), std::invalid_argument);
  CHECK_THROWS_AS(Subset(0, 64), std::invalid_argument);
}

TEST_CASE("subset parse") {
  CHECK(Subset::parse(" { 2 , 1 } ", 3) == Subset::of({1, 2}, 3));
  CHECK(Subset::parse("{}", 3).is_empty());
  CHECK_THROWS_AS(Subset::parse("1,2", 3), std::invalid_argument);
  CHECK_THROWS_AS(Subset::parse("{1,1}", 3), std::invalid_argument);
  CHECK_THROWS_AS(Subset::parse("{1,}", 3), std::invalid_argument);
  CHECK_THROWS_AS(Subset::parse("{x}", 3), std::invalid_argument);
  CHECK_THROWS_AS(Subset::parse("{4}", 3), std::invalid_argument);
}

TEST_CASE("subset ordering is by mask value") {
  CHECK(Subset::of({1}, 3) < Subset::of({2}, 3));
  CHECK(Subset::of({1, 2}, 3) < Subset::of({3}, 3));
  CHECK(Subset::of({1}, 3) == Subset::of({1}, 3));
}

TEST_CASE("render and parse agree on random subsets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rng() % 64);
    std::uint64_t mask = n == 0 ? 0 : (rng() >> (64 - n));
    Subset s(mask, n);
    CHECK(Subset::parse(s.str(), n) == s);
  }
}

TEST_CASE("set family keeps canonical order and rejects duplicates") {
  SetFamily f(3, {Subset::of({3}, 3), Subset::of({1}, 3), Subset::of({1, 2}, 3)});
  CHECK(f.str() == "{1}\n{1,2}\n{3}\n");
  CHECK(f.contains(Subset::of({3}, 3)));
  CHECK_FALSE(f.contains(Subset::of({2}, 3)));
  CHECK_FALSE(f.insert(Subset::of({1}, 3)));
  CHECK(f.insert(Subset::of({2}, 3)));
  CHECK(f.size() == 4);
  CHECK_THROWS_AS(SetFamily(3, {Subset::of({1}, 3), Subset::of({1}, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(SetFamily(3, {Subset::of({1}, 4)}), std::invalid_argument);
  CHECK(SetFamily::parse(f.str(), 3) == f);
  CHECK(SetFamily::parse("# comment\n{1}\n\n{2,3}  # trailing\n", 3).size() == 2);
  CHECK_THROWS_AS(SetFamily::parse("{1}\n{1}\n", 3), std::invalid_argument);
}

TEST_CASE("binomial values") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(64, 32) == BigInt("1832624140942590534"));
  CHECK_THROWS_AS(binomial(65, 1), std::invalid_argument);
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("binomial matches an independent Pascal triangle") {
  std::vector<std::vector<BigInt>> pascal(65);
  for (int n = 0; n <= 64; ++n) {
    pascal[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (int n = 0; n <= 64; ++n) {
    for (int k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == pascal[n][k]);
  }
  for (int n = 1; n <= 64; ++n) {
    for (int k = 1; k <= n; ++k) REQUIRE(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
  }
}

TEST_CASE("main bound") {
  CHECK(bound_main(4, 3) == 8);
  CHECK(bound_main(5, 2) == 6);
  for (int n = 1; n <= 20; ++n) CHECK(bound_main(n, 1) == 2);
  for (int n = 2; n <= 63; ++n) REQUIRE(bound_main(n, n - 1) == (BigInt{1} << (n - 1)));
  CHECK_THROWS_AS(bound_main(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound_main(3, 4), std::invalid_argument);
}

TEST_CASE("refined bound") {
  CHECK(bound_refined(5, 3, 2) == 10);
  CHECK(bound_refined(6, 4, 4) == 16);
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; k < n; ++k) REQUIRE(bound_refined(n, k, 1) == bound_main(n, k));
  }
  CHECK_THROWS_AS(bound_refined(5, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound_refined(5, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(bound_refined(5, 5, 1), std::invalid_argument);
}

TEST_CASE("gap between consecutive refined bounds") {
  CHECK(bound_gap(6, 3, 1) == 5);
  for (int n = 3; n <= 40; ++n) {
    for (int k = 2; k < n; ++k) {
      for (int t = 1; t < k; ++t) {
        BigInt g = bound_gap(n, k, t);
        if (k == n - 1) {
          REQUIRE(g == 0);
        } else {
          REQUIRE(g > 0);
        }
      }
    }
  }
  CHECK_THROWS_AS(bound_gap(6, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(bound_gap(6, 6, 1), std::invalid_argument);
}

TEST_CASE("bound table recomputes") {
  auto b = BoundTable::refined(7, 4, 2);
  CHECK(b.consistent());
  b.value += 1;
  CHECK_FALSE(b.consistent());
  CHECK(BoundTable::main(7, 4).consistent());
}

TEST_CASE("intersecting families") {
  CHECK(family_is_intersecting(SetFamily(3, {Subset::of({1}, 3), Subset::of({1, 2}, 3), Subset::of({1, 3}, 3)})));
  CHECK_FALSE(family_is_intersecting(SetFamily(3, {Subset::of({1}, 3), Subset::of({2}, 3)})));
  CHECK(family_is_intersecting(SetFamily(3)));
}

}  // TEST_SUITE
