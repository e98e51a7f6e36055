#include "extremal/nonneg.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "extremal/kernels.hpp"

namespace extremal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  BigInt v{std::string(digits)};
  return text.front() == '-' ? BigInt(-v) : v;
}

// Values scaled by the LCM of their denominators; sign of any subset sum is
// preserved exactly.
struct ScaledValues {
  std::vector<BigInt> exact;
  std::optional<std::vector<std::int64_t>> fast;
};

ScaledValues scale(const NumberSequence& s) {
  BigInt lcm = 1;
  for (const auto& v : s.values()) lcm = boost::multiprecision::lcm(lcm, denominator(v));
  ScaledValues out;
  BigInt max_abs = 0;
  for (const auto& v : s.values()) {
    BigInt scaled = numerator(v) * (lcm / denominator(v));
    max_abs = std::max(max_abs, BigInt(abs(scaled)));
    out.exact.push_back(std::move(scaled));
  }
  if (max_abs * s.n() < (BigInt{1} << 62)) {
    std::vector<std::int64_t> fast;
    fast.reserve(out.exact.size());
    for (const auto& v : out.exact) fast.push_back(v.convert_to<std::int64_t>());
    out.fast = std::move(fast);
  }
  return out;
}

std::vector<BigInt> big_half_table(const std::vector<BigInt>& v, std::size_t offset,
                                   std::size_t width) {
  std::vector<BigInt> table(std::size_t{1} << width);
  for (std::size_t m = 1; m < table.size(); ++m) {
    table[m] = table[m & (m - 1)] + v[offset + static_cast<std::size_t>(std::countr_zero(m))];
  }
  return table;
}

// Exact fallback for values too large for the int64 kernels.
std::vector<std::uint64_t> collect_nonneg_big(const std::vector<BigInt>& v, bool keep) {
  const std::size_t low_bits = v.size() / 2;
  auto low = big_half_table(v, 0, low_bits);
  auto high = big_half_table(v, low_bits, v.size() - low_bits);
  const std::uint64_t total = std::uint64_t{1} << v.size();
  const std::uint64_t low_mask = (std::uint64_t{1} << low_bits) - 1;
  std::vector<std::uint64_t> out;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (low[mask & low_mask] + high[mask >> low_bits] >= 0) {
      ++count;
      if (keep) out.push_back(mask);
    }
  }
  if (!keep) out.push_back(count);
  return out;
}

void check_enumerable(const NumberSequence& s) {
  if (s.n() > kMaxEnumerate) {
    throw std::invalid_argument("enumeration limited to n <= " + std::to_string(kMaxEnumerate));
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt p = parse_integer(trim(text.substr(0, slash)));
  auto den_text = trim(text.substr(slash + 1));
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw std::invalid_argument("denominator must be unsigned: '" + std::string(text) + "'");
  }
  BigInt q = parse_integer(den_text);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

NumberSequence::NumberSequence(std::vector<Rational> values, int k)
    : values_(std::move(values)), k_(k), constraint_(false) {
  if (values_.empty() || values_.size() > static_cast<std::size_t>(kMaxGround)) {
    throw std::invalid_argument("sequence length must be in [1, 63]");
  }
  if (k < 1 || k > n()) throw std::invalid_argument("k must satisfy 1 <= k <= n");
  constraint_ = constraint_holds(*this);
}

int NumberSequence::nonneg_count() const {
  return static_cast<int>(
      std::count_if(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; }));
}

std::string NumberSequence::str() const {
  std::string out = std::to_string(n()) + " " + std::to_string(k_) + "\n";
  for (const auto& v : values_) out += format_rational(v) + "\n";
  return out;
}

NumberSequence NumberSequence::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::invalid_argument("sequence file is empty");
  std::istringstream header{std::string(lines.front())};
  int n = 0;
  int k = 0;
  std::string extra;
  if (!(header >> n >> k) || (header >> extra)) {
    throw std::invalid_argument("sequence header must be 'n k'");
  }
  if (n < 1 || static_cast<std::size_t>(n) != lines.size() - 1) {
    throw std::invalid_argument("sequence header announces " + std::to_string(n) +
                                " values but file has " + std::to_string(lines.size() - 1));
  }
  std::vector<Rational> values;
  for (std::size_t i = 1; i < lines.size(); ++i) values.push_back(parse_rational(lines[i]));
  return NumberSequence(std::move(values), k);
}

bool constraint_holds(const NumberSequence& s) {
  if (s.k() >= s.n()) return true;
  std::vector<Rational> sorted = s.values();
  std::partial_sort(sorted.begin(), sorted.begin() + s.k() + 1, sorted.end(), std::greater<>{});
  Rational top = 0;
  for (int i = 0; i <= s.k(); ++i) top += sorted[static_cast<std::size_t>(i)];
  return top < 0;
}

std::uint64_t count_nonneg(const NumberSequence& s, bool parallel) {
  check_enumerable(s);
  auto scaled = scale(s);
  if (scaled.fast) {
    return parallel ? kernels::count_nonneg_parallel(*scaled.fast)
                    : kernels::count_nonneg_serial(*scaled.fast);
  }
  return collect_nonneg_big(scaled.exact, false).front();
}

NonnegReport enumerate_nonneg(const NumberSequence& s, EnumerateOptions opts) {
  check_enumerable(s);
  if (!constraint_holds(s)) {
    throw std::invalid_argument("sequence violates the size-" + std::to_string(s.k()) +
                                " negativity constraint");
  }
  NonnegReport report;
  report.t = s.nonneg_count();
  report.bound = bound_main(s.n(), s.k());
  if (opts.with_family) {
    auto scaled = scale(s);
    std::vector<std::uint64_t> masks;
    if (scaled.fast) {
      masks = opts.parallel ? kernels::collect_nonneg_parallel(*scaled.fast)
                            : kernels::collect_nonneg_serial(*scaled.fast);
    } else {
      masks = collect_nonneg_big(scaled.exact, true);
    }
    std::vector<Subset> members;
    members.reserve(masks.size());
    for (auto m : masks) members.emplace_back(m, s.n());
    report.count = members.size();
    report.family = SetFamily(s.n(), std::move(members));
  } else {
    report.count = count_nonneg(s, opts.parallel);
  }
  report.tight = BigInt(report.count) == report.bound;
  return report;
}

NumberSequence extremal_construction(int n, int k, int t) {
  if (!(1 <= t && t <= k && k < n) || n > kMaxGround) {
    throw std::invalid_argument("extremal_construction requires 1 <= t <= k < n <= 63");
  }
  std::vector<Rational> values(static_cast<std::size_t>(n), Rational(-1));
  values[0] = k - t;
  for (int i = 1; i < t; ++i) values[static_cast<std::size_t>(i)] = 0;
  return NumberSequence(std::move(values), k);
}

StructureSummary classify_nonneg_structure(const NumberSequence& s) {
  auto report = enumerate_nonneg(s, {.with_family = true, .parallel = true});
  const int n = s.n();
  StructureSummary out;
  out.t = report.t;
  out.count = report.count;
  std::uint64_t zero_mask = 0;
  std::uint64_t neg_mask = 0;
  for (int i = 1; i <= n; ++i) {
    if (s[i] < 0) {
      neg_mask |= std::uint64_t{1} << (i - 1);
    } else if (out.lead == 0 || s[i] > s[out.lead]) {
      out.lead = i;
    }
  }
  for (int i = 1; i <= n; ++i) {
    if (s[i] >= 0 && i != out.lead) zero_mask |= std::uint64_t{1} << (i - 1);
  }
  out.zero_block = Subset(zero_mask, n);
  out.negatives = Subset(neg_mask, n);
  const int slack = s.k() - out.t;
  for (const auto& u : *report.family) {
    bool ok = false;
    if (out.lead != 0 && u.contains(out.lead)) {
      ok = std::popcount(u.mask() & neg_mask) <= slack;
    } else {
      ok = u.is_subset_of(out.zero_block);
    }
    if (!ok) {
      out.witness = u;
      break;
    }
  }
  out.certified = !out.witness.has_value();
  // Allowed-form family size: 2^{t-1} * sum_{i<=k-t} C(n-t, i) + 2^{t-1}, or 1 when t = 0.
  BigInt allowed = 1;
  if (out.t >= 1) {
    BigInt tails = 0;
    for (int i = 0; i <= slack; ++i) tails += binomial(n - out.t, i);
    allowed = (BigInt{1} << (out.t - 1)) * (tails + 1);
  }
  out.complete = out.certified && BigInt(out.count) == allowed;
  return out;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

namespace {

bool int_constraint_holds(std::vector<std::int64_t> v, int k) {
  if (k >= static_cast<int>(v.size())) return true;
  std::partial_sort(v.begin(), v.begin() + k + 1, v.end(), std::greater<>{});
  return std::accumulate(v.begin(), v.begin() + k + 1, std::int64_t{0}) < 0;
}

NumberSequence to_sequence(const std::vector<std::int64_t>& v, int k) {
  std::vector<Rational> values(v.begin(), v.end());
  return NumberSequence(std::move(values), k);
}

}  // namespace

std::optional<NumberSequence> sample_constrained(int n, int k, std::mt19937_64& rng,
                                                 int max_attempts) {
  const std::int64_t bound = 4 * static_cast<std::int64_t>(n);
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  std::vector<std::int64_t> v(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& x : v) x = dist(rng);
    if (int_constraint_holds(v, k)) return to_sequence(v, k);
  }
  return std::nullopt;
}

std::optional<NumberSequence> sample_constrained_t(int n, int k, int t, std::mt19937_64& rng,
                                                   int max_attempts) {
  const std::int64_t bound = 4 * static_cast<std::int64_t>(n);
  std::uniform_int_distribution<std::int64_t> nonneg(0, bound);
  std::uniform_int_distribution<std::int64_t> neg(-bound, -1);
  std::vector<std::int64_t> v(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i < t ? nonneg(rng) : neg(rng);
    if (int_constraint_holds(v, k)) {
      std::shuffle(v.begin(), v.end(), rng);
      return to_sequence(v, k);
    }
  }
  return std::nullopt;
}

namespace {

struct TrialOutcome {
  bool sampled = false;
  std::uint64_t count = 0;
  bool violation = false;
  bool refined_violation = false;
  std::optional<NumberSequence> sequence;
};

// t == 0: unrefined run over all constraint-satisfying samples.
TheoremVerdict run_verification(int n, int k, int t, std::uint64_t trials, std::uint64_t seed,
                                int max_attempts) {
  TheoremVerdict verdict;
  verdict.n = n;
  verdict.k = k;
  verdict.t = t;
  verdict.seed = seed;
  verdict.trials = trials;
  verdict.bound = t == 0 ? bound_main(n, k) : bound_refined(n, k, t);
  const std::uint64_t bound = verdict.bound.convert_to<std::uint64_t>();

  std::vector<std::uint64_t> refined_caps(static_cast<std::size_t>(k) + 1, 1);
  for (int tt = 1; tt <= k; ++tt) {
    refined_caps[static_cast<std::size_t>(tt)] = bound_refined(n, k, tt).convert_to<std::uint64_t>();
  }

  std::vector<TrialOutcome> outcomes(trials);
  const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t trial = 0; trial < total; ++trial) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
    auto seq = t == 0 ? sample_constrained(n, k, rng, max_attempts)
                      : sample_constrained_t(n, k, t, rng, max_attempts);
    auto& out = outcomes[static_cast<std::size_t>(trial)];
    if (!seq) continue;
    out.sampled = true;
    out.count = count_nonneg(*seq, true);
    const int own_t = seq->nonneg_count();
    out.violation = out.count > bound;
    out.refined_violation = own_t > k || out.count > refined_caps[static_cast<std::size_t>(own_t)];
    if (out.violation || out.refined_violation) out.sequence = std::move(seq);
  }

  for (std::uint64_t i = 0; i < trials; ++i) {
    auto& out = outcomes[i];
    if (!out.sampled) {
      if (!verdict.sampling_failed) {
        verdict.message = "sampling failed at trial " + std::to_string(i) + " after " +
                          std::to_string(max_attempts) + " attempts";
      }
      verdict.sampling_failed = true;
      continue;
    }
    ++verdict.trials_run;
    verdict.max_count = std::max(verdict.max_count, out.count);
    if (out.violation) ++verdict.violations;
    if (out.refined_violation) ++verdict.refined_violations;
    if (out.sequence && !verdict.counterexample) verdict.counterexample = std::move(out.sequence);
  }

  verdict.extremal_count = count_nonneg(extremal_construction(n, k, t == 0 ? 1 : t));
  verdict.extremal_tight = BigInt(verdict.extremal_count) == verdict.bound;
  verdict.max_count = std::max(verdict.max_count, verdict.extremal_count);
  verdict.pass = !verdict.sampling_failed && verdict.violations == 0 &&
                 verdict.refined_violations == 0 && verdict.extremal_tight;
  if (verdict.message.empty()) {
    verdict.message = verdict.pass ? "pass" : "bound violated or construction not tight";
  }
  return verdict;
}

}  // namespace

TheoremVerdict verify_theorem1(int n, int k, std::uint64_t trials, std::uint64_t seed,
                               int max_attempts) {
  if (!(1 <= k && k < n && n <= kMaxVerify)) {
    throw std::invalid_argument("verify_theorem1 requires 1 <= k < n <= 16");
  }
  return run_verification(n, k, 0, trials, seed, max_attempts);
}

TheoremVerdict verify_theorem2(int n, int k, int t, std::uint64_t trials, std::uint64_t seed,
                               int max_attempts) {
  if (!(1 <= t && t <= k && k < n && n <= kMaxVerify)) {
    throw std::invalid_argument("verify_theorem2 requires 1 <= t <= k < n <= 16");
  }
  return run_verification(n, k, t, trials, seed, max_attempts);
}

}  // namespace extremal
