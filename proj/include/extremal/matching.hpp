#pragma once

// The subset-disjointness graphs and the per-pair graphs G_i used to bound
// nonnegative-subset counts, with explicit (near-)perfect matchings and the
// checks that certify them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extremal/bipartite.hpp"
#include "extremal/hallflow.hpp"
#include "extremal/nonneg.hpp"
#include "extremal/setcore.hpp"

namespace extremal {

inline constexpr int kMaxMatchingGround = 14;

enum class Side { A, B };

/// Both sides are all subsets of [m] of size 1..r; S -- T iff S and T are
/// disjoint and |S| + |T| >= r + 1.
struct DisjointnessGraphSpec {
  int m = 0;
  int r = 0;

  /// 1 <= r <= m <= 14.
  void validate() const;
};

/// A bipartite graph whose vertices are labelled by subsets. Left and right
/// are separate vertex universes even when they carry equal labels.
struct SubsetGraph {
  std::vector<Subset> left;
  std::vector<Subset> right;
  BipartiteGraph graph{0, 0};
};

/// Vertices on each side sorted by (size, mask), so size classes are
/// contiguous blocks.
SubsetGraph build_disjointness_graph(const DisjointnessGraphSpec& spec);

struct SubsetMatchingResult {
  Matching matching;
  bool perfect = false;
  std::vector<Subset> unsaturated_left;
  std::vector<Subset> unsaturated_right;
  /// First unsaturated vertex when the matching is not perfect.
  std::optional<std::pair<Side, Subset>> witness;
};

SubsetMatchingResult find_perfect_matching(const DisjointnessGraphSpec& spec);

/// One inequality lhs >= rhs from the case analysis, with both sides exact.
struct InequalityCheck {
  std::string description;
  BigInt lhs;
  BigInt rhs;
  bool holds = false;
  /// The summation range used for lhs equals N(X) read off the reduced graph.
  bool neighborhood_matches = true;
};

struct CorollaryHallReport {
  /// "m>=2r", "r+1<=m<=2r-1" or "m<=r".
  std::string regime;
  bool biregular = false;
  HallVerdict reduced;
  std::vector<InequalityCheck> inequalities;
  /// Reduced Hall condition and every explicit inequality hold.
  bool holds = false;
};

/// The disjointness graph with blocks A_i = B_i = i-subsets, as a
/// partitioned graph ready for the weighted Hall machinery.
PartitionedBipartiteGraph disjointness_blocks(const DisjointnessGraphSpec& spec);

CorollaryHallReport verify_corollary_hall_blocks(const DisjointnessGraphSpec& spec);

/// The pair (A_i, B_i) of complementary subsets of [t] with element 1 in A_i,
/// given by the bitmask of A_i. Ground set is [n].
struct GiGraphSpec {
  int n = 0;
  int k = 0;
  int t = 0;
  std::uint64_t pair = 1;

  /// 1 <= t <= k < n <= 14; pair within [t] and containing element 1.
  void validate() const;
  Subset a_root() const;
  Subset b_root() const;
};

/// All 2^{t-1} pair masks in increasing order.
std::vector<std::uint64_t> gi_pairs(int t);

/// Left: A_i ∪ S, right: B_i ∪ T with S, T inside {t+1..n} of size <= k-t;
/// edge iff S and T are disjoint and |S| + |T| >= k-t+1. Sorted by (|S|, S).
SubsetGraph build_gi_graph(const GiGraphSpec& spec);

struct GiMatchingResult {
  Matching matching;
  std::vector<Subset> unsaturated_left;
  std::vector<Subset> unsaturated_right;
  /// Exactly A_i on the left and B_i on the right are left unmatched.
  bool only_roots_unsaturated = false;
};

GiMatchingResult near_perfect_matching_gi(const GiGraphSpec& spec);

struct PairCount {
  std::uint64_t count = 0;
  BigInt cap;
  bool within_cap = false;
  std::size_t matched_edges = 0;
  /// No matched edge joins two nonnegative vertices.
  bool certificate_ok = false;
};

/// Sorts s in decreasing order (stable) and evaluates the vertices of G_i as
/// index sets of the sorted sequence. Requires the constraint, exactly t
/// nonnegative values and n <= 14.
PairCount count_cap_per_pair(const GiGraphSpec& spec, const NumberSequence& s);

/// Copy of s sorted into decreasing order, ties kept in index order.
NumberSequence sorted_decreasing(const NumberSequence& s);

/// Proposes a partner T on the other side for S on the given side.
using CandidateRule = std::function<std::optional<Subset>(const Subset&, Side)>;

struct CandidateRuleReport {
  bool perfect = false;
  std::string message;
  Matching matching;
};

/// Applies rule to every left vertex and checks the proposals form a perfect
/// matching of the disjointness graph.
CandidateRuleReport validate_candidate_rule(const DisjointnessGraphSpec& spec,
                                            const CandidateRule& rule);

/// S -> [m] \ S. Perfect exactly when r = m - 1.
CandidateRule complement_rule(int m);

}  // namespace extremal
