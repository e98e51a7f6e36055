#pragma once

// Families of nonempty subsets of size <= k in which any two disjoint members
// have sizes summing to at most k, the pushing-up compression that turns such
// a family into an upset of the same size, and an exact maximum-family
// oracle.
//
// Oracle formulation: join two candidate sets by a conflict edge when they
// are disjoint and their sizes sum to more than k. A family has the property
// iff no two of its members conflict, i.e. iff it is an independent set of
// the conflict graph, so the largest such family is a maximum independent
// set.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "extremal/nonneg.hpp"
#include "extremal/setcore.hpp"

namespace extremal {

class BoundedFamily {
 public:
  /// Members must be nonempty with size <= k, and 1 <= k <= ground.
  BoundedFamily(SetFamily family, int k);

  const SetFamily& family() const { return family_; }
  int k() const { return k_; }
  int ground() const { return family_.ground(); }
  std::size_t size() const { return family_.size(); }

  friend bool operator==(const BoundedFamily&, const BoundedFamily&) = default;

 private:
  SetFamily family_;
  int k_;
};

struct PropertyResult {
  bool holds = true;
  std::optional<std::pair<Subset, Subset>> witness;
};

/// Disjoint members A, B always have |A| + |B| <= k.
PropertyResult has_property(const BoundedFamily& f);

/// A in f implies every superset of A of size <= k is in f.
bool is_upset(const BoundedFamily& f);

/// S_i: A stays when A ∪ {i} is already a member or |A| = k, else becomes
/// A ∪ {i}. Element i is 1-based.
BoundedFamily push_up(const BoundedFamily& f, int element);

struct ShiftStep {
  int element = 0;
  std::size_t changed = 0;
};

struct UpsetResult {
  BoundedFamily family;
  /// Only steps that changed something are logged.
  std::vector<ShiftStep> log;
  std::size_t passes = 0;
};

/// Applies push_up for i = 1..n, repeating full passes until one changes
/// nothing.
UpsetResult to_upset(const BoundedFamily& f);

enum class UpsetCheck {
  Intersecting,
  NotIntersecting,  // would refute the observation
  NotUpset,
  LacksProperty,
  CapTooLarge,  // k must be at most n - 1
};

const char* to_string(UpsetCheck c);

/// For an upset with the property (k <= n-1), confirms it is intersecting.
/// Precondition failures are reported as their own outcomes.
UpsetCheck upset_is_intersecting(const BoundedFamily& f);

inline constexpr int kMaxOracleGround = 6;

struct OracleResult {
  std::uint64_t maximum = 0;
  SetFamily witness;
  std::uint64_t nodes = 0;  // search-tree nodes visited
};

/// Largest property-satisfying family over [n] with sizes 1..k, by
/// branch-and-bound maximum independent set. Requires 1 <= k <= n-1, n <= 6.
OracleResult max_family_oracle(int n, int k);

struct EkrChainVerdict {
  bool property_holds = false;
  std::optional<std::pair<Subset, Subset>> witness;
  std::uint64_t family_size = 0;
  BigInt bound;  // bound_main(n, k) - 1
  bool within_bound = false;
};

/// Nonempty nonnegative-sum index sets of s, checked for the property and
/// against the bound minus the empty set. Requires the constraint, n <= 16.
EkrChainVerdict theorem1_via_ekr(const NumberSequence& s);

}  // namespace extremal
