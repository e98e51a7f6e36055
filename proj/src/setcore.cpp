#include "extremal/setcore.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace extremal {

namespace {

void check_ground(int n) {
  if (n < 0 || n > kMaxGround) {
    throw std::invalid_argument("ground set size " + std::to_string(n) + " outside [0, 63]");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Subset::Subset(std::uint64_t mask, int n) : mask_(mask), n_(n) {
  check_ground(n);
  if (n < 64 && (mask >> n) != 0) {
    throw std::invalid_argument("subset mask has elements beyond ground set of size " +
                                std::to_string(n));
  }
}

Subset Subset::of(std::initializer_list<int> elements, int n) {
  return of(std::span<const int>(elements.begin(), elements.size()), n);
}

Subset Subset::of(std::span<const int> elements, int n) {
  check_ground(n);
  std::uint64_t mask = 0;
  for (int e : elements) {
    if (e < 1 || e > n) {
      throw std::invalid_argument("element " + std::to_string(e) + " outside [1, " +
                                  std::to_string(n) + "]");
    }
    mask |= std::uint64_t{1} << (e - 1);
  }
  return Subset(mask, n);
}

bool Subset::contains(int element) const {
  return element >= 1 && element <= n_ && ((mask_ >> (element - 1)) & 1U) != 0;
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

Subset Subset::with(int element) const {
  if (element < 1 || element > n_) throw std::invalid_argument("element outside ground set");
  return Subset(mask_ | (std::uint64_t{1} << (element - 1)), n_);
}

Subset operator|(const Subset& a, const Subset& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("ground set mismatch");
  return Subset(a.mask_ | b.mask_, a.n_);
}

Subset operator&(const Subset& a, const Subset& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("ground set mismatch");
  return Subset(a.mask_ & b.mask_, a.n_);
}

std::string Subset::str() const {
  std::string out = "{";
  bool first = true;
  for (int e : elements()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  out += '}';
  return out;
}

Subset Subset::parse(std::string_view text, int n) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw std::invalid_argument("subset must be written as {a,b,...}: '" + std::string(text) + "'");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<int> elems;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = trim(text.substr(0, comma));
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("bad subset element '" + std::string(token) + "'");
    }
    if (std::find(elems.begin(), elems.end(), value) != elems.end()) {
      throw std::invalid_argument("repeated element " + std::to_string(value) + " in subset");
    }
    elems.push_back(value);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (trim(text).empty()) throw std::invalid_argument("trailing comma in subset");
  }
  return of(std::span<const int>(elems), n);
}

std::ostream& operator<<(std::ostream& os, const Subset& s) { return os << s.str(); }

SetFamily::SetFamily(int ground_n, std::vector<Subset> members)
    : ground_n_(ground_n), members_(std::move(members)) {
  check_ground(ground_n);
  for (const auto& m : members_) {
    if (m.ground() != ground_n_) throw std::invalid_argument("family member has wrong ground size");
  }
  std::sort(members_.begin(), members_.end());
  auto dup = std::adjacent_find(members_.begin(), members_.end());
  if (dup != members_.end()) throw std::invalid_argument("duplicate family member " + dup->str());
}

bool SetFamily::contains(const Subset& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

bool SetFamily::insert(const Subset& s) {
  if (s.ground() != ground_n_) throw std::invalid_argument("family member has wrong ground size");
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it != members_.end() && *it == s) return false;
  members_.insert(it, s);
  return true;
}

std::string SetFamily::str() const {
  std::string out;
  for (const auto& m : members_) {
    out += m.str();
    out += '\n';
  }
  return out;
}

SetFamily SetFamily::parse(std::string_view text, int n) {
  SetFamily family(n);
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!family.insert(Subset::parse(line, n))) {
      throw std::invalid_argument("duplicate subset on line " + std::to_string(line_no));
    }
  }
  return family;
}

BigInt binomial(int n, int k) {
  if (n < 0 || n > 64) throw std::invalid_argument("binomial: n outside [0, 64]");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

BigInt bound_main(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("bound_main requires 1 <= k <= n");
  BigInt sum = 1;
  for (int i = 0; i <= k - 1; ++i) sum += binomial(n - 1, i);
  return sum;
}

BigInt bound_refined(int n, int k, int t) {
  if (!(1 <= t && t <= k && k < n)) {
    throw std::invalid_argument("bound_refined requires 1 <= t <= k < n");
  }
  BigInt sum = 1;
  for (int i = 0; i <= k - t; ++i) sum += binomial(n - t, i);
  return (BigInt{1} << (t - 1)) * sum;
}

BigInt bound_gap(int n, int k, int t) {
  if (!(1 <= t && t < k && k < n)) throw std::invalid_argument("bound_gap requires 1 <= t < k < n");
  BigInt diff = bound_refined(n, k, t) - bound_refined(n, k, t + 1);
  BigInt closed = (BigInt{1} << (t - 1)) * (binomial(n - t - 1, k - t) - 1);
  if (diff != closed) throw std::logic_error("bound_gap: difference disagrees with closed form");
  return diff;
}

bool BoundTable::consistent() const {
  return value == (t == 0 ? bound_main(n, k) : bound_refined(n, k, t));
}

bool family_is_intersecting(const SetFamily& f) {
  const auto& m = f.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!m[i].intersects(m[j])) return false;
    }
  }
  return true;
}

}  // namespace extremal
