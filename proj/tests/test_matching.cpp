#include <doctest.h>

#include <random>
#include <stdexcept>

#include "extremal/matching.hpp"

using namespace extremal;

namespace {

std::vector<Subset> subsets_up_to(int m, int r) {
  std::vector<Subset> out;
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << m); ++x) {
    if (std::popcount(x) <= r) out.emplace_back(x, m);
  }
  return out;
}

Rational sum_of(const NumberSequence& s, const Subset& u) {
  Rational total = 0;
  for (int e : u.elements()) total += s[e];
  return total;
}

NumberSequence random_with_t(std::mt19937_64& rng, int n, int k, int t) {
  for (int tries = 0; tries < 20; ++tries) {
    auto s = sample_constrained_t(n, k, t, rng, kDefaultMaxAttempts);
    if (s) return *s;
  }
  throw std::runtime_error("sampler exhausted");
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("disjointness graph small cases") {
  auto g = build_disjointness_graph({2, 1});
  CHECK(g.left == std::vector<Subset>{Subset::of({1}, 2), Subset::of({2}, 2)});
  CHECK(g.graph.edge_count() == 2);
  CHECK(g.graph.has_edge(0, 1));
  CHECK(g.graph.has_edge(1, 0));

  auto h = build_disjointness_graph({3, 2});
  CHECK(h.left.size() == 6);
  CHECK(h.right.size() == 6);
  // Each singleton meets only its complement on the other side, in both directions.
  CHECK(h.graph.edge_count() == 6);
  for (int u = 0; u < h.graph.left(); ++u) {
    REQUIRE(h.graph.neighbors(u).size() == 1);
    const auto& partner = h.right[static_cast<std::size_t>(h.graph.neighbors(u).front())];
    CHECK(partner == h.left[static_cast<std::size_t>(u)].complement());
  }

  for (int m = 1; m <= 6; ++m) CHECK(build_disjointness_graph({m, m}).graph.edge_count() == 0);

  CHECK_THROWS_AS(build_disjointness_graph({15, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_disjointness_graph({3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_disjointness_graph({3, 4}), std::invalid_argument);
}

TEST_CASE("disjointness graph matches the edge rule exhaustively") {
  for (int m = 1; m <= 7; ++m) {
    for (int r = 1; r <= m; ++r) {
      auto g = build_disjointness_graph({m, r});
      auto expected = subsets_up_to(m, r);
      std::sort(expected.begin(), expected.end(), [](const Subset& a, const Subset& b) {
        return std::pair(a.size(), a.mask()) < std::pair(b.size(), b.mask());
      });
      REQUIRE(g.left == expected);
      REQUIRE(g.right == expected);
      std::size_t edges = 0;
      for (std::size_t u = 0; u < expected.size(); ++u) {
        for (std::size_t v = 0; v < expected.size(); ++v) {
          const bool want = !expected[u].intersects(expected[v]) &&
                            expected[u].size() + expected[v].size() >= r + 1;
          REQUIRE(g.graph.has_edge(static_cast<int>(u), static_cast<int>(v)) == want);
          edges += want;
        }
      }
      REQUIRE(g.graph.edge_count() == edges);
    }
  }
}

TEST_CASE("perfect matching examples") {
  auto a = find_perfect_matching({3, 2});
  CHECK(a.perfect);
  CHECK(a.matching.size() == 6);
  auto g = build_disjointness_graph({3, 2});
  for (auto [u, v] : a.matching.pairs) {
    CHECK(g.right[static_cast<std::size_t>(v)] == g.left[static_cast<std::size_t>(u)].complement());
  }

  auto b = find_perfect_matching({2, 1});
  CHECK(b.perfect);
  CHECK(b.matching.size() == 2);

  auto c = find_perfect_matching({6, 3});
  CHECK(c.perfect);
  CHECK(2 * c.matching.size() == 82);

  auto d = find_perfect_matching({4, 4});
  CHECK_FALSE(d.perfect);
  REQUIRE(d.witness);
  CHECK(d.witness->first == Side::A);
  CHECK(d.witness->second == Subset::of({1}, 4));
  CHECK(d.unsaturated_left.size() == 15);
}

TEST_CASE("perfect matchings exist below the diagonal and fail on it") {
  for (int m = 1; m <= 9; ++m) {
    for (int r = 1; r <= m; ++r) {
      auto res = find_perfect_matching({m, r});
      auto g = build_disjointness_graph({m, r});
      REQUIRE(is_valid_matching(g.graph, res.matching));
      if (r < m) {
        REQUIRE(res.perfect);
        REQUIRE(res.matching.size() == g.left.size());
        REQUIRE(res.unsaturated_left.empty());
      } else {
        REQUIRE_FALSE(res.perfect);
        REQUIRE(res.witness);
      }
    }
  }
}

TEST_CASE("matchings are reproducible") {
  CHECK(find_perfect_matching({7, 4}).matching.pairs == find_perfect_matching({7, 4}).matching.pairs);
}

TEST_CASE("blocked Hall case analysis") {
  auto wide = verify_corollary_hall_blocks({6, 2});
  CHECK(wide.regime == "m>=2r");
  CHECK(wide.biregular);
  CHECK(wide.holds);
  CHECK(wide.inequalities.size() == 2);
  for (const auto& c : wide.inequalities) {
    CHECK(c.holds);
    CHECK(c.neighborhood_matches);
  }
  // X={1..1}: C(6,2) >= C(6,1).
  CHECK(wide.inequalities[0].lhs == 15);
  CHECK(wide.inequalities[0].rhs == 6);

  auto mid = verify_corollary_hall_blocks({4, 3});
  CHECK(mid.regime == "r+1<=m<=2r-1");
  CHECK(mid.holds);
  CHECK_FALSE(mid.inequalities.empty());
  for (const auto& c : mid.inequalities) CHECK(c.neighborhood_matches);

  auto diag = verify_corollary_hall_blocks({3, 3});
  CHECK(diag.regime == "m<=r");
  CHECK_FALSE(diag.reduced.holds);
  CHECK_FALSE(diag.holds);
}

TEST_CASE("case analysis agrees with the weighted decision") {
  for (int m = 1; m <= 9; ++m) {
    for (int r = 1; r <= m; ++r) {
      auto rep = verify_corollary_hall_blocks({m, r});
      const bool decided = weighted_hall_decide(disjointness_blocks({m, r}));
      REQUIRE(rep.holds == decided);
      REQUIRE(decided == (r < m));
      for (const auto& c : rep.inequalities) {
        REQUIRE(c.neighborhood_matches);
        REQUIRE(c.holds);
      }
    }
  }
}

TEST_CASE("gi pairs and roots") {
  CHECK(gi_pairs(1) == std::vector<std::uint64_t>{1});
  CHECK(gi_pairs(3) == std::vector<std::uint64_t>{1, 3, 5, 7});
  GiGraphSpec spec{5, 3, 2, 1};
  CHECK(spec.a_root() == Subset::of({1}, 5));
  CHECK(spec.b_root() == Subset::of({2}, 5));
  CHECK_THROWS_AS((GiGraphSpec{5, 3, 2, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GiGraphSpec{5, 3, 2, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GiGraphSpec{5, 5, 2, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GiGraphSpec{15, 3, 2, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GiGraphSpec{5, 3, 0, 1}.validate()), std::invalid_argument);
}

TEST_CASE("gi graph examples") {
  auto g = build_gi_graph({5, 3, 2, 1});
  CHECK(g.left.size() == 4);
  CHECK(g.right.size() == 4);
  CHECK(g.left.front() == Subset::of({1}, 5));
  CHECK(g.right.front() == Subset::of({2}, 5));
  auto m = near_perfect_matching_gi({5, 3, 2, 1});
  CHECK(m.matching.size() == 3);
  CHECK(m.only_roots_unsaturated);

  auto flat = build_gi_graph({5, 3, 3, 1});
  CHECK(flat.left.size() == 1);
  CHECK(flat.right.size() == 1);
  CHECK(flat.graph.edge_count() == 0);
  auto fm = near_perfect_matching_gi({5, 3, 3, 1});
  CHECK(fm.matching.size() == 0);
  CHECK(fm.only_roots_unsaturated);

  auto big = near_perfect_matching_gi({6, 4, 2, 1});
  CHECK(big.matching.size() == 10);
  CHECK(big.only_roots_unsaturated);
}

TEST_CASE("gi edge rule and near-perfect matchings across parameters") {
  for (int n = 2; n <= 9; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int t = 1; t <= k; ++t) {
        for (auto pair : gi_pairs(t)) {
          GiGraphSpec spec{n, k, t, pair};
          auto g = build_gi_graph(spec);
          const std::uint64_t head = (std::uint64_t{1} << t) - 1;
          for (std::size_t u = 0; u < g.left.size(); ++u) {
            REQUIRE((g.left[u].mask() & head) == pair);
            for (std::size_t v = 0; v < g.right.size(); ++v) {
              const std::uint64_t s = g.left[u].mask() & ~head;
              const std::uint64_t tt = g.right[v].mask() & ~head;
              const bool want = (s & tt) == 0 && std::popcount(s) + std::popcount(tt) >= k - t + 1;
              REQUIRE(g.graph.has_edge(static_cast<int>(u), static_cast<int>(v)) == want);
            }
          }
          auto res = near_perfect_matching_gi(spec);
          REQUIRE(is_valid_matching(g.graph, res.matching));
          REQUIRE(res.only_roots_unsaturated);
        }
      }
    }
  }
}

TEST_CASE("no gi edge joins two nonnegative sets") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    auto s = sorted_decreasing(random_with_t(rng, n, k, t));
    for (auto pair : gi_pairs(t)) {
      auto g = build_gi_graph({n, k, t, pair});
      for (int u = 0; u < g.graph.left(); ++u) {
        if (sum_of(s, g.left[static_cast<std::size_t>(u)]) < 0) continue;
        for (int v : g.graph.neighbors(u)) REQUIRE(sum_of(s, g.right[static_cast<std::size_t>(v)]) < 0);
      }
    }
  }
}

TEST_CASE("sorting keeps ties in index order") {
  NumberSequence s({Rational(-1), Rational(2), Rational(0), Rational(-1)}, 3);
  auto d = sorted_decreasing(s);
  CHECK(d.values() == std::vector<Rational>{2, 0, -1, -1});
  CHECK(d.k() == 3);
}

TEST_CASE("per-pair counts") {
  auto c = count_cap_per_pair({5, 3, 2, 1}, extremal_construction(5, 3, 2));
  CHECK(c.count == 5);
  CHECK(c.cap == 5);
  CHECK(c.within_cap);
  CHECK(c.certificate_ok);
  CHECK(c.matched_edges == 3);
  CHECK_THROWS_AS(count_cap_per_pair({5, 3, 1, 1}, extremal_construction(5, 3, 2)), std::invalid_argument);
  NumberSequence bad({Rational(1), Rational(1)}, 1);
  CHECK_THROWS_AS(count_cap_per_pair({2, 1, 1, 1}, bad), std::invalid_argument);
}

TEST_CASE("per-pair counts sum to the global count") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 80; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
    const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    auto s = random_with_t(rng, n, k, t);
    std::uint64_t total = 0;
    for (auto pair : gi_pairs(t)) {
      auto pc = count_cap_per_pair({n, k, t, pair}, s);
      REQUIRE(pc.within_cap);
      REQUIRE(pc.certificate_ok);
      total += pc.count;
    }
    REQUIRE(total == enumerate_nonneg(s, {.with_family = false}).count);
  }
}

TEST_CASE("candidate rules") {
  for (int m = 2; m <= 7; ++m) {
    for (int r = 1; r <= m; ++r) {
      auto rep = validate_candidate_rule({m, r}, complement_rule(m));
      CHECK(rep.perfect == (r == m - 1));
    }
  }
  auto rep = validate_candidate_rule({3, 2}, complement_rule(3));
  CHECK(rep.matching.size() == 6);
  CHECK(rep.message == "perfect matching");

  CandidateRule constant = [](const Subset&, Side) -> std::optional<Subset> { return Subset::of({1, 2}, 3); };
  auto dup = validate_candidate_rule({3, 2}, constant);
  CHECK_FALSE(dup.perfect);
  CandidateRule silent = [](const Subset&, Side) -> std::optional<Subset> { return std::nullopt; };
  CHECK(validate_candidate_rule({3, 2}, silent).message == "no proposal for {1}");
}

}  // TEST_SUITE
