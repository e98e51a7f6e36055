#pragma once

// Sequences of exact rationals under the (>k)-negativity constraint, counting
// of nonnegative-sum subsets, the extremal constructions and the seeded
// verification runs for both upper bounds.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "extremal/setcore.hpp"

namespace extremal {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "-p/q" or an integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

inline constexpr int kMaxEnumerate = 20;
inline constexpr int kMaxVerify = 16;

class NumberSequence {
 public:
  /// Requires 1 <= n <= 63 and 1 <= k <= n. Records whether the constraint holds.
  NumberSequence(std::vector<Rational> values, int k);

  int n() const { return static_cast<int>(values_.size()); }
  int k() const { return k_; }
  const std::vector<Rational>& values() const { return values_; }
  /// Value at 1-based index i.
  const Rational& operator[](int i) const { return values_.at(static_cast<std::size_t>(i - 1)); }
  /// The constraint verdict computed at construction.
  bool recorded_constraint() const { return constraint_; }
  /// Number of entries >= 0.
  int nonneg_count() const;

  /// Header "n k" followed by one value per line.
  std::string str() const;
  static NumberSequence parse(std::string_view text);

  friend bool operator==(const NumberSequence&, const NumberSequence&) = default;

 private:
  std::vector<Rational> values_;
  int k_;
  bool constraint_;
};

/// True iff every subset of size > k has negative sum. Checked as: the k+1
/// largest values sum to < 0; vacuously true when k = n.
bool constraint_holds(const NumberSequence& s);

struct NonnegReport {
  std::uint64_t count = 0;
  std::optional<SetFamily> family;
  int t = 0;
  BigInt bound;
  bool tight = false;
};

struct EnumerateOptions {
  bool with_family = true;
  bool parallel = true;
};

/// All index sets (empty set included) with nonnegative sum, in increasing
/// mask order. Requires the constraint and n <= 20.
NonnegReport enumerate_nonneg(const NumberSequence& s, EnumerateOptions opts = {});

/// Count only, without the constraint or bound bookkeeping. n <= 20.
std::uint64_t count_nonneg(const NumberSequence& s, bool parallel = true);

/// x_1 = k-t, x_2..x_t = 0, x_{t+1}..x_n = -1, for 1 <= t <= k < n.
NumberSequence extremal_construction(int n, int k, int t);

struct StructureSummary {
  bool certified = false;
  int t = 0;
  /// 1-based index playing the role of x_1 (largest value); 0 when t = 0.
  int lead = 0;
  /// Other nonnegative indices (the x_2..x_t block).
  Subset zero_block;
  /// Negative indices.
  Subset negatives;
  /// First nonnegative set that fits neither allowed form.
  std::optional<Subset> witness;
  /// True iff the nonnegative family equals the full allowed-form family.
  bool complete = false;
  std::uint64_t count = 0;
};

/// Checks whether every nonnegative set is {lead} ∪ S ∪ T with S inside the
/// zero block and |T| <= k - t negatives, or a subset of the zero block. The
/// lead is the largest value (lowest index on ties).
StructureSummary classify_nonneg_structure(const NumberSequence& s);

// --- sampling -------------------------------------------------------------

/// Per-trial generator: seeded from (seed, trial) so trials are independent
/// of execution order.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Integers uniform in [-4n, 4n], redrawn until the constraint holds.
/// Returns nullopt after max_attempts rejections.
std::optional<NumberSequence> sample_constrained(int n, int k, std::mt19937_64& rng,
                                                 int max_attempts);

/// As above, conditioned on exactly t nonnegative entries: nonnegative values
/// uniform in [0, 4n], negatives uniform in [-4n, -1], positions shuffled.
std::optional<NumberSequence> sample_constrained_t(int n, int k, int t, std::mt19937_64& rng,
                                                   int max_attempts);

inline constexpr int kDefaultMaxAttempts = 200000;

struct TheoremVerdict {
  bool pass = false;
  int n = 0;
  int k = 0;
  int t = 0;  // 0 for the unrefined theorem
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t max_count = 0;
  BigInt bound;
  std::uint64_t extremal_count = 0;
  bool extremal_tight = false;
  std::uint64_t violations = 0;
  /// Samples whose count exceeded bound_refined for their own t.
  std::uint64_t refined_violations = 0;
  std::optional<NumberSequence> counterexample;
  bool sampling_failed = false;
  std::string message;
};

/// Requires 1 <= k < n <= 16.
TheoremVerdict verify_theorem1(int n, int k, std::uint64_t trials, std::uint64_t seed,
                               int max_attempts = kDefaultMaxAttempts);

/// Requires 1 <= t <= k < n <= 16.
TheoremVerdict verify_theorem2(int n, int k, int t, std::uint64_t trials, std::uint64_t seed,
                               int max_attempts = kDefaultMaxAttempts);

}  // namespace extremal
