#include "extremal/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace extremal {

BipartiteGraph::BipartiteGraph(int left, int right) : right_(right) {
  if (left < 0 || right < 0) throw std::invalid_argument("negative vertex count");
  adj_.resize(static_cast<std::size_t>(left));
}

void BipartiteGraph::add_edge(int u, int v) {
  if (u < 0 || u >= left() || v < 0 || v >= right_) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  adj_[static_cast<std::size_t>(u)].push_back(v);
  sorted_ = false;
}

void BipartiteGraph::finalize() {
  if (sorted_) return;
  for (auto& row : adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  sorted_ = true;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : adj_) total += row.size();
  return total;
}

bool BipartiteGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= left()) return false;
  const auto& row = adj_[static_cast<std::size_t>(u)];
  if (sorted_) return std::binary_search(row.begin(), row.end(), v);
  return std::find(row.begin(), row.end(), v) != row.end();
}

namespace {

constexpr int kFree = -1;
constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        match_left_(static_cast<std::size_t>(g.left()), kFree),
        match_right_(static_cast<std::size_t>(g.right()), kFree),
        dist_(static_cast<std::size_t>(g.left()), kInf),
        next_(static_cast<std::size_t>(g.left()), 0) {}

  void run() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (int u = 0; u < g_.left(); ++u) {
        if (match_left_[idx(u)] == kFree) dfs(u);
      }
    }
  }

  Matching result() const {
    Matching m;
    for (int u = 0; u < g_.left(); ++u) {
      if (match_left_[idx(u)] != kFree) m.pairs.emplace_back(u, match_left_[idx(u)]);
    }
    return m;
  }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < g_.left(); ++u) {
      if (match_left_[idx(u)] == kFree) {
        dist_[idx(u)] = 0;
        q.push(u);
      } else {
        dist_[idx(u)] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g_.neighbors(u)) {
        int w = match_right_[idx(v)];
        if (w == kFree) {
          found = true;
        } else if (dist_[idx(w)] == kInf) {
          dist_[idx(w)] = dist_[idx(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  // Iterative DFS along the layered graph; next_ remembers the scan position.
  bool dfs(int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      const auto& nb = g_.neighbors(u);
      bool advanced = false;
      while (next_[idx(u)] < static_cast<int>(nb.size())) {
        int v = nb[static_cast<std::size_t>(next_[idx(u)])];
        int w = match_right_[idx(v)];
        if (w == kFree) {
          // Augment along the stack.
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            int a = *it;
            int b = g_.neighbors(a)[static_cast<std::size_t>(next_[idx(a)])];
            match_left_[idx(a)] = b;
            match_right_[idx(b)] = a;
          }
          return true;
        }
        if (dist_[idx(w)] == dist_[idx(u)] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
        ++next_[idx(u)];
      }
      if (advanced) continue;
      dist_[idx(u)] = kInf;
      stack.pop_back();
      if (!stack.empty()) ++next_[idx(stack.back())];
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
  std::vector<int> next_;
};

}  // namespace

Matching hopcroft_karp(BipartiteGraph& g) {
  g.finalize();
  HopcroftKarp hk(g);
  hk.run();
  return hk.result();
}

bool is_valid_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<char> used_left(static_cast<std::size_t>(g.left()), 0);
  std::vector<char> used_right(static_cast<std::size_t>(g.right()), 0);
  for (auto [u, v] : m.pairs) {
    if (u < 0 || u >= g.left() || v < 0 || v >= g.right()) return false;
    if (!g.has_edge(u, v)) return false;
    if (used_left[static_cast<std::size_t>(u)]++ || used_right[static_cast<std::size_t>(v)]++) {
      return false;
    }
  }
  return true;
}

std::pair<std::vector<int>, std::vector<int>> unsaturated(const BipartiteGraph& g,
                                                          const Matching& m) {
  std::vector<char> used_left(static_cast<std::size_t>(g.left()), 0);
  std::vector<char> used_right(static_cast<std::size_t>(g.right()), 0);
  for (auto [u, v] : m.pairs) {
    used_left[static_cast<std::size_t>(u)] = 1;
    used_right[static_cast<std::size_t>(v)] = 1;
  }
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int u = 0; u < g.left(); ++u) {
    if (!used_left[static_cast<std::size_t>(u)]) out.first.push_back(u);
  }
  for (int v = 0; v < g.right(); ++v) {
    if (!used_right[static_cast<std::size_t>(v)]) out.second.push_back(v);
  }
  return out;
}

}  // namespace extremal
