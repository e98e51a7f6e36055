#pragma once

// Plain bipartite graphs over integer vertex ids and Hopcroft-Karp maximum
// matching. Left vertices are 0..left-1, right vertices 0..right-1.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace extremal {

class BipartiteGraph {
 public:
  BipartiteGraph(int left, int right);

  /// Throws std::invalid_argument on out-of-range ids. Duplicates are ignored.
  void add_edge(int u, int v);
  /// Sorts adjacency lists; called implicitly by the matching routine.
  void finalize();

  int left() const { return static_cast<int>(adj_.size()); }
  int right() const { return right_; }
  std::size_t edge_count() const;
  const std::vector<int>& neighbors(int u) const { return adj_.at(static_cast<std::size_t>(u)); }
  bool has_edge(int u, int v) const;

 private:
  std::vector<std::vector<int>> adj_;
  int right_;
  bool sorted_ = true;
};

/// Vertex-disjoint (left, right) edges.
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  std::size_t size() const { return pairs.size(); }
};

/// Maximum matching. Deterministic: BFS layers and DFS both follow sorted
/// vertex and neighbor order, so equal graphs give equal matchings.
Matching hopcroft_karp(BipartiteGraph& g);

/// Every pair is an edge of g and no vertex is used twice.
bool is_valid_matching(const BipartiteGraph& g, const Matching& m);

/// Unmatched left and right vertices, in increasing order.
std::pair<std::vector<int>, std::vector<int>> unsaturated(const BipartiteGraph& g,
                                                          const Matching& m);

}  // namespace extremal
