#pragma once

// Ground-set subsets, set families and exact bound arithmetic.
//
// Elements are 1-based in every public interface ("{1,3,4}"); bit i-1 of the
// mask stands for element i.

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace extremal {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxGround = 63;

class Subset {
 public:
  Subset() = default;
  /// Throws std::invalid_argument if n is outside [0, 63] or mask has bits >= n.
  Subset(std::uint64_t mask, int n);

  static Subset of(std::initializer_list<int> elements, int n);
  static Subset of(std::span<const int> elements, int n);
  static Subset full(int n) { return Subset(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)), n); }
  static Subset empty(int n) { return Subset(0, n); }

  std::uint64_t mask() const { return mask_; }
  int ground() const { return n_; }
  int size() const { return std::popcount(mask_); }
  bool is_empty() const { return mask_ == 0; }
  bool contains(int element) const;
  std::vector<int> elements() const;

  Subset with(int element) const;
  Subset complement() const { return Subset(mask_ ^ full(n_).mask_, n_); }
  bool intersects(const Subset& o) const { return (mask_ & o.mask_) != 0; }
  bool is_subset_of(const Subset& o) const { return (mask_ & ~o.mask_) == 0; }

  friend Subset operator|(const Subset& a, const Subset& b);
  friend Subset operator&(const Subset& a, const Subset& b);

  // Ordered by mask value, then by ground size.
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    if (auto c = a.mask_ <=> b.mask_; c != 0) return c;
    return a.n_ <=> b.n_;
  }
  friend bool operator==(const Subset&, const Subset&) = default;

  /// "{1,3,4}"; the empty set renders as "{}".
  std::string str() const;
  /// Parses "{1,3}" (whitespace tolerated). Throws std::invalid_argument.
  static Subset parse(std::string_view text, int n);

 private:
  std::uint64_t mask_ = 0;
  int n_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Subset& s);

/// Distinct subsets of a common ground set, kept in canonical sorted order.
class SetFamily {
 public:
  explicit SetFamily(int ground_n = 0) : ground_n_(ground_n) {}
  /// Throws std::invalid_argument on duplicates or ground-size mismatch.
  SetFamily(int ground_n, std::vector<Subset> members);

  int ground() const { return ground_n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Subset& s) const;
  const std::vector<Subset>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Inserts keeping order; returns false if already present.
  bool insert(const Subset& s);

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

  /// One subset per line.
  std::string str() const;
  /// Reads one subset per line; blank lines and '#' comments are skipped.
  static SetFamily parse(std::string_view text, int n);

 private:
  int ground_n_;
  std::vector<Subset> members_;
};

/// C(n, k) for 0 <= n <= 64; zero when k < 0 or k > n.
BigInt binomial(int n, int k);

/// sum_{i=0}^{k-1} C(n-1, i) + 1, for 1 <= k <= n.
BigInt bound_main(int n, int k);

/// 2^{t-1} * (sum_{i=0}^{k-t} C(n-t, i) + 1), for 1 <= t <= k < n.
BigInt bound_refined(int n, int k, int t);

/// bound_refined(n,k,t) - bound_refined(n,k,t+1), for 1 <= t < k < n.
/// Throws std::logic_error if the difference disagrees with
/// 2^{t-1} * (C(n-t-1, k-t) - 1).
BigInt bound_gap(int n, int k, int t);

/// A bound value together with the parameters that produced it. t == 0 marks
/// the unrefined bound.
struct BoundTable {
  int n = 0;
  int k = 0;
  int t = 0;
  BigInt value;

  static BoundTable main(int n, int k) { return {n, k, 0, bound_main(n, k)}; }
  static BoundTable refined(int n, int k, int t) { return {n, k, t, bound_refined(n, k, t)}; }
  bool consistent() const;
};

bool family_is_intersecting(const SetFamily& f);

}  // namespace extremal
