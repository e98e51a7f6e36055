#include "extremal/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace extremal {

MaxFlow::MaxFlow(int nodes) : out_(static_cast<std::size_t>(nodes)) {
  if (nodes < 2) throw std::invalid_argument("flow network needs at least two nodes");
}

int MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  const int n = static_cast<int>(out_.size());
  if (from < 0 || from >= n || to < 0 || to >= n) throw std::invalid_argument("bad flow node");
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, capacity});
  edges_.push_back({from, 0, 0});
  out_[static_cast<std::size_t>(from)].push_back(id);
  out_[static_cast<std::size_t>(to)].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int s, int t) {
  level_.assign(out_.size(), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int id : out_[static_cast<std::size_t>(u)]) {
      const auto& e = edges_[static_cast<std::size_t>(id)];
      if (e.cap > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
        level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(t)] >= 0;
}

std::int64_t MaxFlow::push(int u, int t, std::int64_t limit) {
  if (u == t) return limit;
  auto& cur = cursor_[static_cast<std::size_t>(u)];
  const auto& adj = out_[static_cast<std::size_t>(u)];
  for (; cur < adj.size(); ++cur) {
    const int id = adj[cur];
    auto& e = edges_[static_cast<std::size_t>(id)];
    if (e.cap <= 0 || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1) {
      continue;
    }
    if (std::int64_t got = push(e.to, t, std::min(limit, e.cap)); got > 0) {
      e.cap -= got;
      edges_[static_cast<std::size_t>(id ^ 1)].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  if (source == sink) throw std::invalid_argument("source equals sink");
  source_ = source;
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    cursor_.assign(out_.size(), 0);
    while (std::int64_t f = push(source, sink, std::numeric_limits<std::int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

std::int64_t MaxFlow::flow(int edge_id) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_id));
  return e.original - e.cap;
}

std::vector<char> MaxFlow::source_side() const {
  std::vector<char> seen(out_.size(), 0);
  if (source_ < 0) return seen;
  std::vector<int> stack{source_};
  seen[static_cast<std::size_t>(source_)] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int id : out_[static_cast<std::size_t>(u)]) {
      const auto& e = edges_[static_cast<std::size_t>(id)];
      if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
        seen[static_cast<std::size_t>(e.to)] = 1;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace extremal
