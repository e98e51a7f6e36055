#include <doctest.h>

#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "extremal/nonneg.hpp"

using namespace extremal;

namespace {

NumberSequence seq(std::initializer_list<long> xs, int k) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return NumberSequence(std::move(v), k);
}

// Reference: sum every subset directly in rational arithmetic.
std::vector<std::uint64_t> brute_nonneg(const NumberSequence& s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.n()); ++m) {
    Rational sum = 0;
    for (int i = 0; i < s.n(); ++i) {
      if ((m >> i) & 1U) sum += s.values()[static_cast<std::size_t>(i)];
    }
    if (sum >= 0) out.push_back(m);
  }
  return out;
}

// Reference: every subset of size > k has negative sum.
bool brute_constraint(const NumberSequence& s) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.n()); ++m) {
    if (std::popcount(m) <= s.k()) continue;
    Rational sum = 0;
    for (int i = 0; i < s.n(); ++i) {
      if ((m >> i) & 1U) sum += s.values()[static_cast<std::size_t>(i)];
    }
    if (sum >= 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> masks_of(const SetFamily& f) {
  std::vector<std::uint64_t> out;
  for (const auto& s : f) out.push_back(s.mask());
  return out;
}

}  // namespace

TEST_SUITE("nonneg") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational(" -7/14 ") == Rational(-1, 2));
  CHECK(parse_rational("+2/4") == Rational(1, 2));
  CHECK(format_rational(Rational(-3, 6)) == "-1/2");
  CHECK(format_rational(Rational(4)) == "4");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("sequence file format") {
  auto s = NumberSequence::parse("4 3\n2\n-1\n-1/1\n# note\n-1\n");
  CHECK(s == seq({2, -1, -1, -1}, 3));
  CHECK(NumberSequence::parse(s.str()) == s);
  CHECK_THROWS_AS(NumberSequence::parse("3 2\n1\n-1\n"), std::invalid_argument);
  CHECK_THROWS_AS(NumberSequence::parse("2 3\n1\n-1\n"), std::invalid_argument);
  CHECK_THROWS_AS(NumberSequence::parse("2\n1\n-1\n"), std::invalid_argument);
  CHECK_THROWS_AS(NumberSequence::parse(""), std::invalid_argument);
}

TEST_CASE("sequence construction limits") {
  CHECK_THROWS_AS(NumberSequence({}, 1), std::invalid_argument);
  CHECK_THROWS_AS(seq({1, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(seq({1, 2}, 3), std::invalid_argument);
}

TEST_CASE("constraint examples") {
  CHECK(constraint_holds(seq({2, -1, -1, -1}, 3)));
  CHECK_FALSE(constraint_holds(seq({1, 1}, 1)));
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k < n; ++k) {
      std::vector<Rational> v(static_cast<std::size_t>(n), Rational(-1));
      v[0] = k - 1;
      NumberSequence s(v, k);
      CHECK(constraint_holds(s));
      CHECK(s.recorded_constraint());
    }
  }
  CHECK(constraint_holds(seq({5, 5}, 2)));  // k = n is vacuous
}

TEST_CASE("constraint check equals brute force over all large subsets") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 12; ++n) {
    std::uniform_int_distribution<long> dist(-3 * n, 2 * n);
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<Rational> v;
      for (int i = 0; i < n; ++i) v.emplace_back(dist(rng), 1 + static_cast<long>(rng() % 3));
      std::uniform_int_distribution<int> kd(1, n);
      NumberSequence s(v, kd(rng));
      REQUIRE(constraint_holds(s) == brute_constraint(s));
      REQUIRE(s.recorded_constraint() == constraint_holds(s));
    }
  }
}

TEST_CASE("enumeration examples") {
  auto a = enumerate_nonneg(seq({2, -1, -1, -1}, 3));
  CHECK(a.count == 8);
  CHECK(a.tight);
  CHECK(a.t == 1);
  auto b = enumerate_nonneg(seq({1, 0, -1, -1, -1}, 3));
  CHECK(b.count == brute_nonneg(seq({1, 0, -1, -1, -1}, 3)).size());
  CHECK(b.count == 10);
  CHECK(b.t == 2);
  auto c = enumerate_nonneg(seq({-1}, 1));
  CHECK(c.count == 1);
  CHECK(c.family->members().front().is_empty());
  CHECK(enumerate_nonneg(seq({0, 0, 0, 0, -1, -1}, 4)).count == 16);
  CHECK_THROWS_AS(enumerate_nonneg(seq({1, 1}, 1)), std::invalid_argument);
  std::vector<Rational> big(21, Rational(-1));
  CHECK_THROWS_AS(enumerate_nonneg(NumberSequence(big, 3)), std::invalid_argument);
}

TEST_CASE("enumeration matches brute force on rational and huge inputs") {
  std::mt19937_64 rng(4242);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 11);
    std::vector<Rational> v;
    for (int i = 0; i < n; ++i) {
      BigInt num = static_cast<long>(rng() % 41) - 25;
      if (rep % 3 == 0) num *= BigInt("1000000000000000000000000");  // forces the cpp_int path
      v.emplace_back(num, 1 + static_cast<long>(rng() % 7));
    }
    NumberSequence s(v, n);
    auto expected = brute_nonneg(s);
    CHECK(count_nonneg(s, true) == expected.size());
    CHECK(count_nonneg(s, false) == expected.size());
    if (constraint_holds(s)) {
      auto par = enumerate_nonneg(s, {.with_family = true, .parallel = true});
      auto ser = enumerate_nonneg(s, {.with_family = true, .parallel = false});
      CHECK(masks_of(*par.family) == expected);
      CHECK(masks_of(*ser.family) == expected);
      CHECK(par.family->contains(Subset::empty(n)));
    }
  }
}

TEST_CASE("exact sign test at zero") {
  // 1/3 + 1/3 + 1/3 - 1 is exactly zero and must count as nonnegative.
  NumberSequence s({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(-1)}, 4);
  auto rep = enumerate_nonneg(s);
  CHECK(rep.family->contains(Subset::full(4)));
  CHECK(rep.count == brute_nonneg(s).size());
}

TEST_CASE("extremal construction") {
  CHECK(extremal_construction(5, 3, 2) == seq({1, 0, -1, -1, -1}, 3));
  CHECK(extremal_construction(4, 3, 1) == seq({2, -1, -1, -1}, 3));
  CHECK(extremal_construction(6, 4, 4) == seq({0, 0, 0, 0, -1, -1}, 4));
  for (int n = 2; n <= 9; ++n) {
    for (int k = 1; k < n; ++k) {
      for (int t = 1; t <= k; ++t) {
        auto s = extremal_construction(n, k, t);
        REQUIRE(constraint_holds(s));
        REQUIRE(BigInt(brute_nonneg(s).size()) == bound_refined(n, k, t));
      }
    }
  }
  CHECK_THROWS_AS(extremal_construction(4, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(extremal_construction(4, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_construction(4, 2, 0), std::invalid_argument);
}

TEST_CASE("structure of the nonnegative family") {
  auto st = classify_nonneg_structure(extremal_construction(5, 3, 2));
  CHECK(st.certified);
  CHECK(st.complete);
  CHECK(st.lead == 1);
  CHECK(st.zero_block == Subset::of({2}, 5));

  auto one = classify_nonneg_structure(seq({2, -1, -1, -1}, 3));
  CHECK(one.certified);
  CHECK(one.t == 1);
  CHECK(one.zero_block.is_empty());

  auto zeros = classify_nonneg_structure(seq({0, 0, -1}, 2));
  CHECK(zeros.certified);
  CHECK(zeros.lead == 1);

  // {2,3} = 2 - 1 >= 0 contains a negative but not the lead.
  auto off = classify_nonneg_structure(seq({3, 2, -1, -5}, 3));
  CHECK_FALSE(off.certified);
  REQUIRE(off.witness);
  CHECK(*off.witness == Subset::of({2, 3}, 4));

  // Certified but not extremal: fewer sets than the allowed shape.
  auto sparse = classify_nonneg_structure(seq({1, -2, -2, -2}, 3));
  CHECK(sparse.certified);
  CHECK_FALSE(sparse.complete);

  CHECK_THROWS_AS(classify_nonneg_structure(seq({1, 1}, 1)), std::invalid_argument);
}

TEST_CASE("complement dichotomy when the total is -1") {
  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 11);
    std::uniform_int_distribution<long> dist(-3 * n, 3 * n);
    std::vector<Rational> v;
    long total = 0;
    for (int i = 0; i + 1 < n; ++i) {
      long x = dist(rng);
      total += x;
      v.emplace_back(x);
    }
    v.emplace_back(-1 - total);
    NumberSequence s(v, n - 1);
    REQUIRE(constraint_holds(s));
    REQUIRE(enumerate_nonneg(s, {.with_family = false}).count == (std::uint64_t{1} << (n - 1)));
  }
}

TEST_CASE("samplers respect their conditioning") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    auto rng = trial_rng(8, trial);
    auto s = sample_constrained(10, 4, rng, kDefaultMaxAttempts);
    REQUIRE(s);
    CHECK(constraint_holds(*s));
    for (const auto& v : s->values()) {
      CHECK(v >= -40);
      CHECK(v <= 40);
      CHECK(denominator(v) == 1);
    }
    auto rng2 = trial_rng(8, trial);
    auto st = sample_constrained_t(10, 4, 3, rng2, kDefaultMaxAttempts);
    REQUIRE(st);
    CHECK(st->nonneg_count() == 3);
    CHECK(constraint_holds(*st));
  }
  auto a = trial_rng(1, 2);
  auto b = trial_rng(1, 2);
  CHECK(a() == b());
  auto c = trial_rng(1, 3);
  auto d = trial_rng(2, 2);
  auto e = trial_rng(1, 2);
  auto first = e();
  CHECK(c() != first);
  CHECK(d() != first);
}

TEST_CASE("main-bound verification runs") {
  auto v = verify_theorem1(8, 3, 1000, 7);
  CHECK(v.pass);
  CHECK(v.trials_run == 1000);
  CHECK(v.violations == 0);
  CHECK(v.refined_violations == 0);
  CHECK(v.extremal_tight);
  CHECK(v.bound == bound_main(8, 3));

  auto small = verify_theorem1(4, 3, 100, 3);
  CHECK(small.pass);
  CHECK(small.max_count == 8);

  CHECK_THROWS_AS(verify_theorem1(5, 5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem1(17, 3, 10, 1), std::invalid_argument);
}

TEST_CASE("refined-bound verification runs") {
  auto v = verify_theorem2(5, 3, 2, 500, 1);
  CHECK(v.pass);
  CHECK(v.max_count == 10);
  auto w = verify_theorem2(6, 4, 4, 200, 1);
  CHECK(w.pass);
  CHECK(w.max_count == 16);
  for (int t = 1; t <= 5; ++t) {
    auto u = verify_theorem2(6, 5, t, 50, 2);
    CHECK(u.pass);
    CHECK(u.bound == 32);
  }
  CHECK_THROWS_AS(verify_theorem2(5, 3, 4, 10, 1), std::invalid_argument);
}

TEST_CASE("sampling failure is reported") {
  auto v = verify_theorem1(16, 1, 5, 1, 1);
  CHECK(v.sampling_failed);
  CHECK_FALSE(v.pass);
  CHECK(v.trials_run < 5);
  CHECK(v.message.find("sampling failed") != std::string::npos);
}

TEST_CASE("verification is reproducible and thread-count independent") {
  auto a = verify_theorem1(10, 5, 300, 42);
  auto b = verify_theorem1(10, 5, 300, 42);
  CHECK(a.max_count == b.max_count);
  CHECK(a.trials_run == b.trials_run);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
  auto c = verify_theorem1(10, 5, 300, 42);
  omp_set_num_threads(saved);
  CHECK(c.max_count == a.max_count);
#endif
}

}  // TEST_SUITE
