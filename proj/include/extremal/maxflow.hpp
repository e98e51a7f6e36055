#pragma once

#include <cstdint>
#include <vector>

namespace extremal {

/// Dinic's blocking-flow max-flow over integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  /// Returns an edge id usable with flow().
  int add_edge(int from, int to, std::int64_t capacity);
  std::int64_t run(int source, int sink);

  std::int64_t flow(int edge_id) const;
  /// Nodes reachable from the source in the final residual graph (the source
  /// side of a minimum cut). Valid after run().
  std::vector<char> source_side() const;

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    std::int64_t original;
  };

  bool build_levels(int s, int t);
  std::int64_t push(int u, int t, std::int64_t limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  int source_ = -1;
};

}  // namespace extremal
