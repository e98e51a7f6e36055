#include "extremal/hallflow.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "extremal/maxflow.hpp"

namespace extremal {

namespace {

std::vector<int> offsets(const std::vector<int>& sizes) {
  std::vector<int> out{0};
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("block sizes must be positive");
    out.push_back(out.back() + s);
  }
  return out;
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

}  // namespace

PartitionedBipartiteGraph::PartitionedBipartiteGraph(std::vector<int> a_sizes,
                                                     std::vector<int> b_sizes,
                                                     const std::vector<BlockEdge>& edges)
    : a_sizes_(std::move(a_sizes)),
      b_sizes_(std::move(b_sizes)),
      a_offset_(offsets(a_sizes_)),
      b_offset_(offsets(b_sizes_)),
      graph_(a_offset_.back(), b_offset_.back()) {
  for (const auto& e : edges) add_edge(e.a, e.b);
}

void PartitionedBipartiteGraph::add_edge(VertexRef a, VertexRef b) {
  graph_.add_edge(a_id(a), b_id(b));
}

int PartitionedBipartiteGraph::a_id(VertexRef v) const {
  if (v.block < 0 || v.block >= a_blocks() || v.ordinal < 0 || v.ordinal >= a_sizes_[at(v.block)]) {
    throw std::invalid_argument("no A-vertex " + std::to_string(v.block + 1) + ":" +
                                std::to_string(v.ordinal + 1));
  }
  return a_offset_[at(v.block)] + v.ordinal;
}

int PartitionedBipartiteGraph::b_id(VertexRef v) const {
  if (v.block < 0 || v.block >= b_blocks() || v.ordinal < 0 || v.ordinal >= b_sizes_[at(v.block)]) {
    throw std::invalid_argument("no B-vertex " + std::to_string(v.block + 1) + ":" +
                                std::to_string(v.ordinal + 1));
  }
  return b_offset_[at(v.block)] + v.ordinal;
}

VertexRef PartitionedBipartiteGraph::a_ref(int id) const {
  auto it = std::upper_bound(a_offset_.begin(), a_offset_.end(), id);
  int block = static_cast<int>(it - a_offset_.begin()) - 1;
  return {block, id - a_offset_[at(block)]};
}

VertexRef PartitionedBipartiteGraph::b_ref(int id) const {
  auto it = std::upper_bound(b_offset_.begin(), b_offset_.end(), id);
  int block = static_cast<int>(it - b_offset_.begin()) - 1;
  return {block, id - b_offset_[at(block)]};
}

std::string PartitionedBipartiteGraph::str() const {
  std::ostringstream os;
  os << a_blocks() << ' ' << b_blocks() << '\n';
  for (std::size_t i = 0; i < a_sizes_.size(); ++i) os << (i ? " " : "") << a_sizes_[i];
  os << '\n';
  for (std::size_t j = 0; j < b_sizes_.size(); ++j) os << (j ? " " : "") << b_sizes_[j];
  os << '\n';
  for (int u = 0; u < graph_.left(); ++u) {
    auto a = a_ref(u);
    auto row = graph_.neighbors(u);
    std::sort(row.begin(), row.end());
    for (int v : row) {
      auto b = b_ref(v);
      os << a.block + 1 << ':' << a.ordinal + 1 << ' ' << b.block + 1 << ':' << b.ordinal + 1 << '\n';
    }
  }
  return os.str();
}

namespace {

VertexRef parse_ref(const std::string& token) {
  auto colon = token.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("vertex must be block:ordinal, got '" + token + "'");
  std::size_t p1 = 0;
  std::size_t p2 = 0;
  int block = 0;
  int ordinal = 0;
  try {
    block = std::stoi(token.substr(0, colon), &p1);
    ordinal = std::stoi(token.substr(colon + 1), &p2);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad vertex '" + token + "'");
  }
  if (p1 != colon || p2 != token.size() - colon - 1) throw std::invalid_argument("bad vertex '" + token + "'");
  return {block - 1, ordinal - 1};
}

std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      continue;
    }
    lines.push_back(line);
  }
  return lines;
}

std::vector<int> read_ints(const std::string& line, int expected, const char* what) {
  std::istringstream is(line);
  std::vector<int> out;
  int v = 0;
  while (is >> v) out.push_back(v);
  if (!is.eof() || static_cast<int>(out.size()) != expected) {
    throw std::invalid_argument(std::string("expected ") + std::to_string(expected) + " " + what);
  }
  return out;
}

}  // namespace

PartitionedBipartiteGraph PartitionedBipartiteGraph::parse(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.size() < 3) throw std::invalid_argument("graph file needs header and two size lines");
  auto header = read_ints(lines[0], 2, "header values 'k l'");
  if (header[0] < 1 || header[1] < 1) throw std::invalid_argument("block counts must be positive");
  auto a = read_ints(lines[1], header[0], "A-block sizes");
  auto b = read_ints(lines[2], header[1], "B-block sizes");
  PartitionedBipartiteGraph g(a, b);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    std::istringstream is(lines[i]);
    std::string ta;
    std::string tb;
    std::string extra;
    if (!(is >> ta >> tb) || (is >> extra)) {
      throw std::invalid_argument("edge line must be 'i:p j:q': '" + lines[i] + "'");
    }
    g.add_edge(parse_ref(ta), parse_ref(tb));
  }
  g.graph().finalize();
  return g;
}

BiregularReport validate_biregular(const PartitionedBipartiteGraph& g) {
  BiregularReport report;
  const int k = g.a_blocks();
  const int l = g.b_blocks();
  const auto& graph = g.graph();
  // deg_a[u][j]: neighbors of A-vertex u inside B_j; deg_b[v][i] likewise.
  std::vector<std::vector<int>> deg_a(at(g.a_total()), std::vector<int>(at(l), 0));
  std::vector<std::vector<int>> deg_b(at(g.b_total()), std::vector<int>(at(k), 0));
  for (int u = 0; u < graph.left(); ++u) {
    auto row = graph.neighbors(u);
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    const int i = g.a_ref(u).block;
    for (int v : row) {
      ++deg_a[at(u)][at(g.b_ref(v).block)];
      ++deg_b[at(v)][at(i)];
    }
  }
  report.degrees.assign(at(k), std::vector<BlockDegrees>(at(l)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) {
      const int a0 = g.a_id({i, 0});
      const int b0 = g.b_id({j, 0});
      const int d1 = deg_a[at(a0)][at(j)];
      const int d2 = deg_b[at(b0)][at(i)];
      for (int o = 1; o < g.a_sizes()[at(i)]; ++o) {
        int d = deg_a[at(a0 + o)][at(j)];
        if (d != d1) {
          report.violation = BiregularViolation{i, j, true, {i, o}, d, d1};
          break;
        }
      }
      for (int o = 1; !report.violation && o < g.b_sizes()[at(j)]; ++o) {
        int d = deg_b[at(b0 + o)][at(i)];
        if (d != d2) report.violation = BiregularViolation{i, j, false, {j, o}, d, d2};
      }
      if (report.violation) {
        const auto& v = *report.violation;
        report.message = "block pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         "): " + (v.on_a_side ? "A" : "B") + "-vertex " +
                         std::to_string(v.vertex.block + 1) + ":" + std::to_string(v.vertex.ordinal + 1) +
                         " has degree " + std::to_string(v.degree) + ", expected " +
                         std::to_string(v.expected);
        report.degrees.clear();
        return report;
      }
      // Double counting of the block pair's edges.
      if (static_cast<long long>(d1) * g.a_sizes()[at(i)] !=
          static_cast<long long>(d2) * g.b_sizes()[at(j)]) {
        throw std::logic_error("edge double count failed on a bi-regular block pair");
      }
      report.degrees[at(i)][at(j)] = {d1, d2};
    }
  }
  report.valid = true;
  report.message = "bi-regular";
  return report;
}

ReducedGraph::ReducedGraph(std::vector<std::int64_t> a_sizes, std::vector<std::int64_t> b_sizes,
                           std::vector<std::vector<char>> block_adj)
    : a_sizes_(std::move(a_sizes)), b_sizes_(std::move(b_sizes)), block_adj_(std::move(block_adj)) {
  auto positive = [](std::int64_t s) { return s > 0; };
  if (!std::all_of(a_sizes_.begin(), a_sizes_.end(), positive) ||
      !std::all_of(b_sizes_.begin(), b_sizes_.end(), positive)) {
    throw std::invalid_argument("reduced graph block sizes must be positive");
  }
  if (block_adj_.size() != a_sizes_.size()) throw std::invalid_argument("block_adj row count mismatch");
  for (const auto& row : block_adj_) {
    if (row.size() != b_sizes_.size()) throw std::invalid_argument("block_adj column count mismatch");
  }
}

ReducedGraph reduce(const PartitionedBipartiteGraph& g) {
  auto report = validate_biregular(g);
  if (!report.valid) throw std::invalid_argument("graph is not bi-regular: " + report.message);
  std::vector<std::vector<char>> adj(at(g.a_blocks()), std::vector<char>(at(g.b_blocks()), 0));
  for (int i = 0; i < g.a_blocks(); ++i) {
    for (int j = 0; j < g.b_blocks(); ++j) adj[at(i)][at(j)] = report.degrees[at(i)][at(j)].nonempty();
  }
  return ReducedGraph(std::vector<std::int64_t>(g.a_sizes().begin(), g.a_sizes().end()),
                      std::vector<std::int64_t>(g.b_sizes().begin(), g.b_sizes().end()), std::move(adj));
}

BipartiteGraph blow_up(const PartitionedBipartiteGraph& g) {
  auto h = reduce(g);
  BipartiteGraph out(g.a_total(), g.b_total());
  for (int i = 0; i < h.k(); ++i) {
    for (int j = 0; j < h.l(); ++j) {
      if (!h.adjacent(i, j)) continue;
      for (int p = 0; p < g.a_sizes()[at(i)]; ++p) {
        for (int q = 0; q < g.b_sizes()[at(j)]; ++q) out.add_edge(g.a_id({i, p}), g.b_id({j, q}));
      }
    }
  }
  out.finalize();
  return out;
}

HallVerdict reduced_hall_condition(const ReducedGraph& h) {
  const int k = h.k();
  const int l = h.l();
  if (k > kMaxHallBlocks) throw std::invalid_argument("reduced Hall check limited to 20 A-blocks");
  if (l > 64) throw std::invalid_argument("reduced Hall check limited to 64 B-blocks");
  std::vector<std::uint64_t> rows(at(k), 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) {
      if (h.adjacent(i, j)) rows[at(i)] |= std::uint64_t{1} << j;
    }
  }
  const std::size_t total = std::size_t{1} << k;
  std::vector<std::uint64_t> nb(total, 0);
  std::vector<std::int64_t> weight(total, 0);
  HallVerdict verdict;
  verdict.holds = true;
  for (std::size_t mask = 1; mask < total; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    nb[mask] = nb[mask & (mask - 1)] | rows[low];
    weight[mask] = weight[mask & (mask - 1)] + h.a_sizes()[low];
    std::int64_t nb_weight = 0;
    for (std::uint64_t m = nb[mask]; m != 0; m &= m - 1) {
      nb_weight += h.b_sizes()[static_cast<std::size_t>(std::countr_zero(m))];
    }
    if (nb_weight < weight[mask]) {
      verdict.holds = false;
      std::vector<int> x;
      for (int i = 0; i < k; ++i) {
        if ((mask >> i) & 1U) x.push_back(i);
      }
      verdict.violating = std::move(x);
      verdict.set_weight = weight[mask];
      verdict.neighbor_weight = nb_weight;
      return verdict;
    }
  }
  return verdict;
}

bool TransportationPlan::satisfies(const ReducedGraph& h) const {
  if (d.size() != at(h.k())) return false;
  std::vector<Rational> col(at(h.l()), Rational(0));
  for (int i = 0; i < h.k(); ++i) {
    const auto& row = d[at(i)];
    if (row.size() != at(h.l())) return false;
    Rational sum = 0;
    for (int j = 0; j < h.l(); ++j) {
      const auto& v = row[at(j)];
      if (v < 0) return false;
      if (!h.adjacent(i, j) && v != 0) return false;
      sum += v;
      col[at(j)] += v;
    }
    if (sum != h.a_sizes()[at(i)]) return false;
  }
  for (int j = 0; j < h.l(); ++j) {
    if (col[at(j)] != h.b_sizes()[at(j)]) return false;
  }
  return true;
}

bool InfeasibilityCut::certifies(const ReducedGraph& h) const {
  std::vector<char> in_u2(at(h.l()), 0);
  for (int j : b_blocks) {
    if (j < 0 || j >= h.l()) return false;
    in_u2[at(j)] = 1;
  }
  std::int64_t a_weight = 0;
  for (int i : a_blocks) {
    if (i < 0 || i >= h.k()) return false;
    a_weight += h.a_sizes()[at(i)];
    for (int j = 0; j < h.l(); ++j) {
      if (!in_u2[at(j)] && h.adjacent(i, j)) return false;
    }
  }
  std::int64_t b_weight = 0;
  for (int j : b_blocks) b_weight += h.b_sizes()[at(j)];
  return b_weight < a_weight;
}

TransportationResult solve_transportation(const ReducedGraph& h) {
  const auto& a = h.a_sizes();
  const auto& b = h.b_sizes();
  const std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const std::int64_t sum_b = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (sum_a != sum_b) {
    throw std::invalid_argument("transportation requires equal side totals (" + std::to_string(sum_a) +
                                " vs " + std::to_string(sum_b) + ")");
  }
  const int k = h.k();
  const int l = h.l();
  // Nodes: source 0, a_i = 1 + i, b_j = 1 + k + j, sink 1 + k + l.
  const int source = 0;
  const int sink = 1 + k + l;
  const std::int64_t infinity = sum_a + 1;
  MaxFlow net(k + l + 2);
  for (int i = 0; i < k; ++i) net.add_edge(source, 1 + i, a[at(i)]);
  std::vector<std::vector<int>> middle(at(k), std::vector<int>(at(l), -1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) {
      middle[at(i)][at(j)] = net.add_edge(1 + i, 1 + k + j, h.adjacent(i, j) ? infinity : 0);
    }
  }
  for (int j = 0; j < l; ++j) net.add_edge(1 + k + j, sink, b[at(j)]);

  TransportationResult result;
  result.demand = sum_a;
  result.flow = net.run(source, sink);
  result.feasible = result.flow == sum_a;
  if (result.feasible) {
    TransportationPlan plan;
    plan.d.assign(at(k), std::vector<Rational>(at(l), Rational(0)));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < l; ++j) plan.d[at(i)][at(j)] = net.flow(middle[at(i)][at(j)]);
    }
    result.plan = std::move(plan);
  } else {
    auto side = net.source_side();
    InfeasibilityCut cut;
    for (int i = 0; i < k; ++i) {
      if (side[at(1 + i)]) cut.a_blocks.push_back(i);
    }
    for (int j = 0; j < l; ++j) {
      if (side[at(1 + k + j)]) cut.b_blocks.push_back(j);
    }
    result.cut = std::move(cut);
  }
  return result;
}

bool weighted_hall_decide(const PartitionedBipartiteGraph& g) {
  if (g.a_total() != g.b_total()) {
    throw std::invalid_argument("perfect matching question needs equal side sizes");
  }
  return solve_transportation(reduce(g)).feasible;
}

PartitionedBipartiteGraph random_biregular_instance(std::mt19937_64& rng,
                                                    const RandomInstanceOptions& opts) {
  std::uniform_int_distribution<int> blocks(1, opts.max_blocks);
  std::uniform_int_distribution<int> size(1, opts.max_block_size);
  std::bernoulli_distribution empty(opts.empty_probability);
  std::bernoulli_distribution complement(opts.complement_probability);

  std::vector<int> a_sizes;
  std::vector<int> b_sizes;
  for (;;) {
    a_sizes.assign(at(blocks(rng)), 0);
    for (auto& s : a_sizes) s = size(rng);
    const int target = std::accumulate(a_sizes.begin(), a_sizes.end(), 0);
    bool matched = false;
    for (int attempt = 0; attempt < 64 && !matched; ++attempt) {
      b_sizes.assign(at(blocks(rng)), 0);
      for (auto& s : b_sizes) s = size(rng);
      matched = std::accumulate(b_sizes.begin(), b_sizes.end(), 0) == target;
    }
    if (matched) break;
  }

  PartitionedBipartiteGraph g(a_sizes, b_sizes);
  for (int i = 0; i < g.a_blocks(); ++i) {
    for (int j = 0; j < g.b_blocks(); ++j) {
      if (empty(rng)) continue;
      const int p_total = a_sizes[at(i)];
      const int q_total = b_sizes[at(j)];
      std::vector<int> divisors;
      for (int c = 1; c <= std::gcd(p_total, q_total); ++c) {
        if (p_total % c == 0 && q_total % c == 0) divisors.push_back(c);
      }
      const int c = divisors[at(std::uniform_int_distribution<int>(0, static_cast<int>(divisors.size()) - 1)(rng))];
      std::vector<int> a_piece(at(p_total));
      std::vector<int> b_piece(at(q_total));
      for (int o = 0; o < p_total; ++o) a_piece[at(o)] = o % c;
      for (int o = 0; o < q_total; ++o) b_piece[at(o)] = o % c;
      std::shuffle(a_piece.begin(), a_piece.end(), rng);
      std::shuffle(b_piece.begin(), b_piece.end(), rng);
      const bool flip = complement(rng);
      for (int p = 0; p < p_total; ++p) {
        for (int q = 0; q < q_total; ++q) {
          if ((a_piece[at(p)] == b_piece[at(q)]) != flip) g.add_edge({i, p}, {j, q});
        }
      }
    }
  }
  g.graph().finalize();
  return g;
}

}  // namespace extremal
