#include "extremal/ekrshift.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace extremal {

BoundedFamily::BoundedFamily(SetFamily family, int k) : family_(std::move(family)), k_(k) {
  if (k < 1 || k > family_.ground()) throw std::invalid_argument("size cap k must satisfy 1 <= k <= n");
  for (const auto& a : family_) {
    if (a.is_empty()) throw std::invalid_argument("bounded family may not contain the empty set");
    if (a.size() > k) throw std::invalid_argument("member " + a.str() + " exceeds size cap");
  }
}

PropertyResult has_property(const BoundedFamily& f) {
  const auto& m = f.family().members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!m[i].intersects(m[j]) && m[i].size() + m[j].size() > f.k()) {
        return {false, std::pair{m[i], m[j]}};
      }
    }
  }
  return {};
}

bool is_upset(const BoundedFamily& f) {
  for (const auto& a : f.family()) {
    if (a.size() >= f.k()) continue;
    for (int i = 1; i <= f.ground(); ++i) {
      if (!a.contains(i) && !f.family().contains(a.with(i))) return false;
    }
  }
  return true;
}

BoundedFamily push_up(const BoundedFamily& f, int element) {
  if (element < 1 || element > f.ground()) throw std::invalid_argument("push_up element outside [n]");
  std::vector<Subset> out;
  out.reserve(f.size());
  for (const auto& a : f.family()) {
    if (a.size() == f.k() || f.family().contains(a.with(element))) {
      out.push_back(a);
    } else {
      out.push_back(a.with(element));
    }
  }
  // SetFamily rejects duplicates, so a size-changing push would throw here.
  return BoundedFamily(SetFamily(f.ground(), std::move(out)), f.k());
}

UpsetResult to_upset(const BoundedFamily& f) {
  UpsetResult result{f, {}, 0};
  for (;;) {
    ++result.passes;
    bool changed_any = false;
    for (int i = 1; i <= f.ground(); ++i) {
      auto next = push_up(result.family, i);
      std::size_t changed = 0;
      for (const auto& a : next.family()) changed += !result.family.family().contains(a);
      if (changed > 0) {
        result.log.push_back({i, changed});
        result.family = std::move(next);
        changed_any = true;
      }
    }
    if (!changed_any) break;
  }
  return result;
}

const char* to_string(UpsetCheck c) {
  switch (c) {
    case UpsetCheck::Intersecting: return "intersecting";
    case UpsetCheck::NotIntersecting: return "not-intersecting";
    case UpsetCheck::NotUpset: return "not-upset";
    case UpsetCheck::LacksProperty: return "lacks-property";
    case UpsetCheck::CapTooLarge: return "cap-too-large";
  }
  return "unknown";
}

UpsetCheck upset_is_intersecting(const BoundedFamily& f) {
  if (f.k() > f.ground() - 1) return UpsetCheck::CapTooLarge;
  if (!is_upset(f)) return UpsetCheck::NotUpset;
  if (!has_property(f).holds) return UpsetCheck::LacksProperty;
  return family_is_intersecting(f.family()) ? UpsetCheck::Intersecting : UpsetCheck::NotIntersecting;
}

namespace {

// Maximum independent set of a graph on <= 64 vertices given as conflict
// bitmasks, via maximum clique in the complement with greedy colouring
// bounds. Colour classes are cliques of the conflict graph, so the number of
// classes bounds any independent set inside the candidate set.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(std::vector<std::uint64_t> conflict)
      : conflict_(std::move(conflict)), n_(static_cast<int>(conflict_.size())) {
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  void run() {
    expand(0, all_);
  }

  std::uint64_t best() const { return best_; }
  std::uint64_t best_set() const { return best_set_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Vertices mutually compatible with v (complement neighbourhood).
  std::uint64_t compatible(int v) const {
    return all_ & ~conflict_[static_cast<std::size_t>(v)] & ~(std::uint64_t{1} << v);
  }

  void expand(std::uint64_t chosen, std::uint64_t candidates) {
    ++nodes_;
    // Candidates without conflicts among the candidates join unconditionally.
    for (std::uint64_t m = candidates; m != 0; m &= m - 1) {
      int v = std::countr_zero(m);
      if ((conflict_[static_cast<std::size_t>(v)] & candidates) == 0) {
        chosen |= std::uint64_t{1} << v;
        candidates &= ~(std::uint64_t{1} << v);
      }
    }
    if (candidates == 0) {
      record(chosen);
      return;
    }
    std::vector<int> order;
    std::vector<int> colour;
    colourise(candidates, order, colour);
    const int base = std::popcount(chosen);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (base + colour[idx] <= std::popcount(best_set_)) return;
      const int v = order[idx];
      expand(chosen | (std::uint64_t{1} << v), candidates & compatible(v));
      candidates &= ~(std::uint64_t{1} << v);
    }
  }

  void record(std::uint64_t chosen) {
    if (std::popcount(chosen) > std::popcount(best_set_)) {
      best_set_ = chosen;
      best_ = static_cast<std::uint64_t>(std::popcount(chosen));
    }
  }

  // Greedy partition into conflict cliques; order lists vertices by class
  // and colour[i] is the class number (1-based) of order[i].
  void colourise(std::uint64_t candidates, std::vector<int>& order, std::vector<int>& colour) const {
    int cls = 0;
    std::uint64_t left = candidates;
    while (left != 0) {
      ++cls;
      std::uint64_t pool = left;
      while (pool != 0) {
        int v = std::countr_zero(pool);
        order.push_back(v);
        colour.push_back(cls);
        left &= ~(std::uint64_t{1} << v);
        pool &= conflict_[static_cast<std::size_t>(v)];
      }
    }
  }

  std::vector<std::uint64_t> conflict_;
  int n_;
  std::uint64_t all_ = 0;
  std::uint64_t best_ = 0;
  std::uint64_t best_set_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult max_family_oracle(int n, int k) {
  if (!(1 <= k && k <= n - 1 && n <= kMaxOracleGround)) {
    throw std::invalid_argument("max_family_oracle requires 1 <= k <= n-1 and n <= 6");
  }
  std::vector<Subset> vertices;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) <= k) vertices.emplace_back(m, n);
  }
  std::vector<std::uint64_t> conflict(vertices.size(), 0);
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = 0; b < vertices.size(); ++b) {
      if (a != b && !vertices[a].intersects(vertices[b]) &&
          vertices[a].size() + vertices[b].size() > k) {
        conflict[a] |= std::uint64_t{1} << b;
      }
    }
  }
  IndependentSetSearch search(conflict);
  search.run();
  OracleResult out;
  out.maximum = search.best();
  out.nodes = search.nodes();
  out.witness = SetFamily(n);
  for (std::uint64_t m = search.best_set(); m != 0; m &= m - 1) {
    out.witness.insert(vertices[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  return out;
}

EkrChainVerdict theorem1_via_ekr(const NumberSequence& s) {
  if (s.n() > kMaxVerify) throw std::invalid_argument("theorem1_via_ekr limited to n <= 16");
  if (s.k() > s.n() - 1) throw std::invalid_argument("theorem1_via_ekr requires k <= n-1");
  auto report = enumerate_nonneg(s, {.with_family = true, .parallel = true});
  SetFamily nonempty(s.n());
  for (const auto& u : *report.family) {
    if (!u.is_empty()) nonempty.insert(u);
  }
  EkrChainVerdict verdict;
  verdict.family_size = nonempty.size();
  verdict.bound = bound_main(s.n(), s.k()) - 1;
  verdict.within_bound = BigInt(verdict.family_size) <= verdict.bound;
  auto prop = has_property(BoundedFamily(std::move(nonempty), s.k()));
  verdict.property_holds = prop.holds;
  verdict.witness = prop.witness;
  return verdict;
}

}  // namespace extremal
