#include "extremal/matching.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace extremal {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Masks over `bits` consecutive positions starting at `shift`, with popcount
// in [lo, hi], sorted by (size, mask).
std::vector<std::uint64_t> size_bounded(int bits, int shift, int lo, int hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
    int c = std::popcount(m);
    if (c >= lo && c <= hi) out.push_back(m << shift);
  }
  std::stable_sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return out;
}

// Edges S -- T over masks inside `universe`: disjoint and |S| + |T| >= need.
void connect_disjoint(BipartiteGraph& g, const std::vector<std::uint64_t>& left,
                      const std::vector<std::uint64_t>& right, std::uint64_t universe, int shift,
                      int need) {
  std::vector<int> index(std::size_t{1} << std::popcount(universe), -1);
  for (std::size_t v = 0; v < right.size(); ++v) index[right[v] >> shift] = static_cast<int>(v);
  for (std::size_t u = 0; u < left.size(); ++u) {
    const std::uint64_t free = universe & ~left[u];
    const int s = std::popcount(left[u]);
    // Every submask of the free positions, including the empty one.
    for (std::uint64_t t = free;; t = (t - 1) & free) {
      if (s + std::popcount(t) >= need) {
        int v = index[t >> shift];
        if (v >= 0) g.add_edge(static_cast<int>(u), v);
      }
      if (t == 0) break;
    }
  }
  g.finalize();
}

void fill_unsaturated(const SubsetGraph& sg, const Matching& m, std::vector<Subset>& left,
                      std::vector<Subset>& right) {
  auto [ul, ur] = unsaturated(sg.graph, m);
  for (int u : ul) left.push_back(sg.left[at(u)]);
  for (int v : ur) right.push_back(sg.right[at(v)]);
}

BigInt binomial_range(int m, int from, int to) {
  BigInt s = 0;
  for (int j = from; j <= to; ++j) s += binomial(m, j);
  return s;
}

std::string range_text(const char* var, int from, int to) {
  return std::string(var) + "=" + std::to_string(from) + ".." + std::to_string(to);
}

}  // namespace

void DisjointnessGraphSpec::validate() const {
  if (!(1 <= r && r <= m && m <= kMaxMatchingGround)) {
    throw std::invalid_argument("disjointness graph requires 1 <= r <= m <= 14");
  }
}

SubsetGraph build_disjointness_graph(const DisjointnessGraphSpec& spec) {
  spec.validate();
  auto masks = size_bounded(spec.m, 0, 1, spec.r);
  SubsetGraph sg;
  sg.graph = BipartiteGraph(static_cast<int>(masks.size()), static_cast<int>(masks.size()));
  for (auto mk : masks) {
    sg.left.emplace_back(mk, spec.m);
    sg.right.emplace_back(mk, spec.m);
  }
  connect_disjoint(sg.graph, masks, masks, Subset::full(spec.m).mask(), 0, spec.r + 1);
  return sg;
}

SubsetMatchingResult find_perfect_matching(const DisjointnessGraphSpec& spec) {
  auto sg = build_disjointness_graph(spec);
  SubsetMatchingResult out;
  out.matching = hopcroft_karp(sg.graph);
  fill_unsaturated(sg, out.matching, out.unsaturated_left, out.unsaturated_right);
  out.perfect = out.unsaturated_left.empty() && out.unsaturated_right.empty();
  if (!out.unsaturated_left.empty()) {
    out.witness = std::pair{Side::A, out.unsaturated_left.front()};
  } else if (!out.unsaturated_right.empty()) {
    out.witness = std::pair{Side::B, out.unsaturated_right.front()};
  }
  return out;
}

PartitionedBipartiteGraph disjointness_blocks(const DisjointnessGraphSpec& spec) {
  auto sg = build_disjointness_graph(spec);
  std::vector<int> sizes;
  for (int i = 1; i <= spec.r; ++i) sizes.push_back(binomial(spec.m, i).convert_to<int>());
  PartitionedBipartiteGraph g(sizes, sizes);
  // Size-sorted vertex order coincides with the block-offset numbering.
  for (int u = 0; u < sg.graph.left(); ++u) {
    for (int v : sg.graph.neighbors(u)) g.graph().add_edge(u, v);
  }
  g.graph().finalize();
  return g;
}

CorollaryHallReport verify_corollary_hall_blocks(const DisjointnessGraphSpec& spec) {
  const int m = spec.m;
  const int r = spec.r;
  auto g = disjointness_blocks(spec);
  CorollaryHallReport report;
  report.biregular = validate_biregular(g).valid;
  if (!report.biregular) {
    report.regime = "not bi-regular";
    return report;
  }
  auto h = reduce(g);
  report.reduced = reduced_hall_condition(h);

  // N(X) in the reduced graph for X = blocks {s..t} (1-based sizes).
  auto neighborhood_is = [&](int s, int t, int from, int to) {
    for (int j = 1; j <= r; ++j) {
      bool adj = false;
      for (int i = s; i <= t; ++i) adj = adj || h.adjacent(i - 1, j - 1);
      if (adj != (j >= from && j <= to)) return false;
    }
    return true;
  };
  auto add = [&](std::string text, int s, int t, int from, int to) {
    InequalityCheck c;
    c.description = std::move(text);
    c.lhs = binomial_range(m, from, to);
    c.rhs = binomial_range(m, s, t);
    c.holds = c.lhs >= c.rhs;
    c.neighborhood_matches = neighborhood_is(s, t, from, to);
    report.inequalities.push_back(std::move(c));
  };

  if (m >= 2 * r) {
    report.regime = "m>=2r";
    for (int t = 1; t <= r; ++t) {
      add("X={1.." + std::to_string(t) + "}: sum C(m,j) " + range_text("j", r + 1 - t, r) +
              " >= sum C(m,i) " + range_text("i", 1, t),
          1, t, r + 1 - t, r);
    }
  } else if (m >= r + 1) {
    report.regime = "r+1<=m<=2r-1";
    for (int t = 1; t <= r; ++t) {
      add("X={1.." + std::to_string(t) + "}: sum C(m,j) " + range_text("j", r + 1 - t, r) +
              " >= sum C(m,i) " + range_text("i", 1, t),
          1, t, r + 1 - t, r);
    }
    for (int s = std::max(1, m - r); s <= r; ++s) {
      for (int t = s; t <= r; ++t) {
        add("X={" + std::to_string(s) + ".." + std::to_string(t) + "}: sum C(m,j) " +
                range_text("j", r + 1 - t, m - s) + " >= sum C(m,i) " + range_text("i", s, t),
            s, t, r + 1 - t, m - s);
      }
    }
  } else {
    report.regime = "m<=r";
  }
  report.holds = report.reduced.holds &&
                 std::all_of(report.inequalities.begin(), report.inequalities.end(),
                             [](const InequalityCheck& c) { return c.holds && c.neighborhood_matches; });
  return report;
}

void GiGraphSpec::validate() const {
  if (!(1 <= t && t <= k && k < n && n <= kMaxMatchingGround)) {
    throw std::invalid_argument("G_i graph requires 1 <= t <= k < n <= 14");
  }
  if ((pair & 1U) == 0 || (pair >> t) != 0) {
    throw std::invalid_argument("pair mask must lie inside [t] and contain element 1");
  }
}

Subset GiGraphSpec::a_root() const { return Subset(pair, n); }

Subset GiGraphSpec::b_root() const { return Subset(((std::uint64_t{1} << t) - 1) ^ pair, n); }

std::vector<std::uint64_t> gi_pairs(int t) {
  if (t < 1 || t > kMaxMatchingGround) throw std::invalid_argument("t outside [1, 14]");
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << t); m += 2) out.push_back(m);
  return out;
}

SubsetGraph build_gi_graph(const GiGraphSpec& spec) {
  spec.validate();
  const int free_bits = spec.n - spec.t;
  const int slack = spec.k - spec.t;
  auto tails = size_bounded(free_bits, spec.t, 0, slack);
  SubsetGraph sg;
  sg.graph = BipartiteGraph(static_cast<int>(tails.size()), static_cast<int>(tails.size()));
  const auto a = spec.a_root().mask();
  const auto b = spec.b_root().mask();
  for (auto s : tails) {
    sg.left.emplace_back(a | s, spec.n);
    sg.right.emplace_back(b | s, spec.n);
  }
  const std::uint64_t universe = ((std::uint64_t{1} << free_bits) - 1) << spec.t;
  connect_disjoint(sg.graph, tails, tails, universe, spec.t, slack + 1);
  return sg;
}

GiMatchingResult near_perfect_matching_gi(const GiGraphSpec& spec) {
  auto sg = build_gi_graph(spec);
  GiMatchingResult out;
  out.matching = hopcroft_karp(sg.graph);
  fill_unsaturated(sg, out.matching, out.unsaturated_left, out.unsaturated_right);
  out.only_roots_unsaturated = out.unsaturated_left == std::vector<Subset>{spec.a_root()} &&
                               out.unsaturated_right == std::vector<Subset>{spec.b_root()};
  return out;
}

NumberSequence sorted_decreasing(const NumberSequence& s) {
  std::vector<Rational> v = s.values();
  std::stable_sort(v.begin(), v.end(), std::greater<>{});
  return NumberSequence(std::move(v), s.k());
}

PairCount count_cap_per_pair(const GiGraphSpec& spec, const NumberSequence& s) {
  spec.validate();
  if (s.n() != spec.n || s.k() != spec.k) throw std::invalid_argument("sequence does not match (n, k)");
  if (!constraint_holds(s)) throw std::invalid_argument("sequence violates the negativity constraint");
  if (s.nonneg_count() != spec.t) {
    throw std::invalid_argument("sequence has " + std::to_string(s.nonneg_count()) +
                                " nonnegative values, expected t = " + std::to_string(spec.t));
  }
  const auto sorted = sorted_decreasing(s);
  auto value_nonneg = [&](const Subset& u) {
    Rational sum = 0;
    for (int e : u.elements()) sum += sorted[e];
    return sum >= 0;
  };

  auto sg = build_gi_graph(spec);
  std::vector<char> left_ok(sg.left.size());
  std::vector<char> right_ok(sg.right.size());
  PairCount out;
  for (std::size_t u = 0; u < sg.left.size(); ++u) out.count += (left_ok[u] = value_nonneg(sg.left[u]));
  for (std::size_t v = 0; v < sg.right.size(); ++v) out.count += (right_ok[v] = value_nonneg(sg.right[v]));

  BigInt tails = 0;
  for (int i = 0; i <= spec.k - spec.t; ++i) tails += binomial(spec.n - spec.t, i);
  out.cap = tails + 1;
  out.within_cap = BigInt(out.count) <= out.cap;

  auto m = hopcroft_karp(sg.graph);
  out.matched_edges = m.size();
  out.certificate_ok = std::none_of(m.pairs.begin(), m.pairs.end(), [&](const auto& p) {
    return left_ok[at(p.first)] && right_ok[at(p.second)];
  });
  return out;
}

CandidateRuleReport validate_candidate_rule(const DisjointnessGraphSpec& spec,
                                            const CandidateRule& rule) {
  auto sg = build_disjointness_graph(spec);
  std::vector<int> index(std::size_t{1} << spec.m, -1);
  for (std::size_t v = 0; v < sg.right.size(); ++v) index[sg.right[v].mask()] = static_cast<int>(v);
  std::vector<char> used(sg.right.size(), 0);
  CandidateRuleReport report;
  for (std::size_t u = 0; u < sg.left.size(); ++u) {
    const auto& s = sg.left[u];
    auto proposal = rule(s, Side::A);
    if (!proposal) {
      report.message = "no proposal for " + s.str();
      return report;
    }
    const int v = proposal->ground() == spec.m ? index[proposal->mask()] : -1;
    if (v < 0 || !sg.graph.has_edge(static_cast<int>(u), v)) {
      report.message = s.str() + " -> " + proposal->str() + " is not an edge";
      return report;
    }
    if (used[at(v)]) {
      report.message = proposal->str() + " proposed twice";
      return report;
    }
    used[at(v)] = 1;
    report.matching.pairs.emplace_back(static_cast<int>(u), v);
  }
  report.perfect = true;
  report.message = "perfect matching";
  return report;
}

CandidateRule complement_rule(int m) {
  return [m](const Subset& s, Side) -> std::optional<Subset> {
    if (s.ground() != m) return std::nullopt;
    return s.complement();
  };
}

}  // namespace extremal
