#pragma once

// Weighted Hall machinery for bipartite graphs whose sides are partitioned
// into blocks such that every induced block pair G[A_i, B_j] is bi-regular.
//
// Such a G has a perfect matching iff the blown-up graph H (each nonempty
// block pair replaced by a complete bipartite graph) has one. That is decided
// on the reduced graph H' (one vertex per block, weighted by block size),
// either by checking the weighted Hall inequalities over all sets of A-blocks
// or by solving the transportation system
//
//   sum_i d_ij = |B_j|,  sum_j d_ij = |A_i|,  d_ij >= 0,
//   d_ij = 0 where G[A_i, B_j] is empty
//
// as a max-flow from the source through a_i -> b_j to the sink.
//
// Block indices are 0-based in this API.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/bipartite.hpp"
#include "extremal/nonneg.hpp"

namespace extremal {

struct VertexRef {
  int block = 0;
  int ordinal = 0;

  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct BlockEdge {
  VertexRef a;
  VertexRef b;
};

class PartitionedBipartiteGraph {
 public:
  /// Block sizes must be positive. Throws std::invalid_argument on edges that
  /// name missing blocks or ordinals.
  PartitionedBipartiteGraph(std::vector<int> a_sizes, std::vector<int> b_sizes,
                            const std::vector<BlockEdge>& edges = {});

  void add_edge(VertexRef a, VertexRef b);

  int a_blocks() const { return static_cast<int>(a_sizes_.size()); }
  int b_blocks() const { return static_cast<int>(b_sizes_.size()); }
  const std::vector<int>& a_sizes() const { return a_sizes_; }
  const std::vector<int>& b_sizes() const { return b_sizes_; }
  int a_total() const { return a_offset_.back(); }
  int b_total() const { return b_offset_.back(); }

  int a_id(VertexRef v) const;
  int b_id(VertexRef v) const;
  VertexRef a_ref(int id) const;
  VertexRef b_ref(int id) const;

  /// The underlying graph on global ids (A-block offsets, then ordinals).
  const BipartiteGraph& graph() const { return graph_; }
  BipartiteGraph& graph() { return graph_; }

  /// Text format: "k l", a line of k A-block sizes, a line of l B-block sizes,
  /// then one edge per line as "i:p j:q" (1-based block and ordinal).
  std::string str() const;
  static PartitionedBipartiteGraph parse(std::string_view text);

 private:
  std::vector<int> a_sizes_;
  std::vector<int> b_sizes_;
  std::vector<int> a_offset_;
  std::vector<int> b_offset_;
  BipartiteGraph graph_;
};

struct BiregularViolation {
  int a_block = 0;
  int b_block = 0;
  bool on_a_side = true;
  VertexRef vertex;
  int degree = 0;
  int expected = 0;
};

/// Per block pair: common degree of A_i-vertices into B_j (d1) and of
/// B_j-vertices into A_i (d2).
struct BlockDegrees {
  int d1 = 0;
  int d2 = 0;
  bool nonempty() const { return d1 > 0; }
};

struct BiregularReport {
  bool valid = false;
  std::vector<std::vector<BlockDegrees>> degrees;  // k x l, filled when valid
  std::optional<BiregularViolation> violation;
  std::string message;
};

BiregularReport validate_biregular(const PartitionedBipartiteGraph& g);

class ReducedGraph {
 public:
  /// Sizes must be positive; block_adj must be a_sizes.size() x b_sizes.size().
  ReducedGraph(std::vector<std::int64_t> a_sizes, std::vector<std::int64_t> b_sizes,
               std::vector<std::vector<char>> block_adj);

  int k() const { return static_cast<int>(a_sizes_.size()); }
  int l() const { return static_cast<int>(b_sizes_.size()); }
  const std::vector<std::int64_t>& a_sizes() const { return a_sizes_; }
  const std::vector<std::int64_t>& b_sizes() const { return b_sizes_; }
  bool adjacent(int i, int j) const {
    return block_adj_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
  }
  const std::vector<std::vector<char>>& block_adj() const { return block_adj_; }

 private:
  std::vector<std::int64_t> a_sizes_;
  std::vector<std::int64_t> b_sizes_;
  std::vector<std::vector<char>> block_adj_;
};

/// Throws std::invalid_argument when g is not bi-regular on its blocks.
ReducedGraph reduce(const PartitionedBipartiteGraph& g);

/// The blown-up graph H, for cross-checks on small instances.
BipartiteGraph blow_up(const PartitionedBipartiteGraph& g);

inline constexpr int kMaxHallBlocks = 20;

struct HallVerdict {
  bool holds = false;
  /// First violating set of A-blocks, in increasing bitmask order.
  std::optional<std::vector<int>> violating;
  std::int64_t set_weight = 0;
  std::int64_t neighbor_weight = 0;
};

/// sum_{j in N(X)} |B_j| >= sum_{i in X} |A_i| for every nonempty set X of
/// A-blocks. Requires k <= 20 and l <= 64.
HallVerdict reduced_hall_condition(const ReducedGraph& h);

struct TransportationPlan {
  std::vector<std::vector<Rational>> d;  // k x l

  /// Row sums |A_i|, column sums |B_j|, nonnegative, zero off the block pattern.
  bool satisfies(const ReducedGraph& h) const;
};

/// Source-side block sets of a minimum cut whose capacity is below sum |A_i|.
struct InfeasibilityCut {
  std::vector<int> a_blocks;  // U_1
  std::vector<int> b_blocks;  // U_2

  /// No edge from U_1 to a B-block outside U_2, and
  /// sum_{U_2} |B_j| < sum_{U_1} |A_i|.
  bool certifies(const ReducedGraph& h) const;
};

struct TransportationResult {
  bool feasible = false;
  std::int64_t flow = 0;
  std::int64_t demand = 0;
  std::optional<TransportationPlan> plan;
  std::optional<InfeasibilityCut> cut;
};

/// Requires sum |A_i| == sum |B_j| (std::invalid_argument otherwise).
TransportationResult solve_transportation(const ReducedGraph& h);

/// Whether G (equivalently H) has a perfect matching. Requires a bi-regular
/// block structure and equal side totals.
bool weighted_hall_decide(const PartitionedBipartiteGraph& g);

struct RandomInstanceOptions {
  int max_blocks = 4;
  int max_block_size = 5;
  double empty_probability = 0.4;
  double complement_probability = 0.5;
};

/// Random blocked bi-regular instance with equal side totals. Block counts
/// are uniform in [1, max_blocks] and sizes uniform in [1, max_block_size]
/// (sides redrawn until the totals match). Each block pair is empty with
/// probability empty_probability; otherwise it is c disjoint copies of
/// K_{|A_i|/c, |B_j|/c} for a random common divisor c of the two sizes, with
/// vertices assigned to copies by random permutation, and then replaced by
/// its bipartite complement with probability complement_probability.
PartitionedBipartiteGraph random_biregular_instance(std::mt19937_64& rng,
                                                    const RandomInstanceOptions& opts = {});

}  // namespace extremal
