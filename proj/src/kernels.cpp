#include "extremal/kernels.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace extremal::kernels {

namespace {

void check_size(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxKernelGround)) {
    throw std::invalid_argument("kernel ground set larger than 30");
  }
}

std::int64_t mask_sum(std::span<const std::int64_t> values, std::uint64_t mask) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if ((mask >> i) & 1U) s += values[i];
  }
  return s;
}

// Sums of every mask over values[offset, offset + width).
std::vector<std::int64_t> half_table(std::span<const std::int64_t> values, std::size_t offset,
                                     std::size_t width) {
  std::vector<std::int64_t> table(std::size_t{1} << width, 0);
  for (std::size_t m = 1; m < table.size(); ++m) {
    const auto low = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(m)));
    table[m] = table[m & (m - 1)] + values[offset + low];
  }
  return table;
}

struct SplitTables {
  std::size_t low_bits;
  std::vector<std::int64_t> low;
  std::vector<std::int64_t> high;

  explicit SplitTables(std::span<const std::int64_t> values)
      : low_bits(values.size() / 2),
        low(half_table(values, 0, low_bits)),
        high(half_table(values, low_bits, values.size() - low_bits)) {}

  std::int64_t sum(std::uint64_t mask) const {
    return low[mask & ((std::uint64_t{1} << low_bits) - 1)] + high[mask >> low_bits];
  }
};

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::uint64_t count_nonneg_serial(std::span<const std::int64_t> values) {
  check_size(values.size());
  const std::uint64_t total = std::uint64_t{1} << values.size();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (mask_sum(values, mask) >= 0) ++count;
  }
  return count;
}

std::uint64_t count_nonneg_parallel(std::span<const std::int64_t> values) {
  check_size(values.size());
  const SplitTables tables(values);
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << values.size());
  std::uint64_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t mask = 0; mask < total; ++mask) {
    if (tables.sum(static_cast<std::uint64_t>(mask)) >= 0) ++count;
  }
  return count;
}

std::vector<std::uint64_t> collect_nonneg_serial(std::span<const std::int64_t> values) {
  check_size(values.size());
  const std::uint64_t total = std::uint64_t{1} << values.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (mask_sum(values, mask) >= 0) out.push_back(mask);
  }
  return out;
}

std::vector<std::uint64_t> collect_nonneg_parallel(std::span<const std::int64_t> values) {
  check_size(values.size());
  const SplitTables tables(values);
  const std::uint64_t total = std::uint64_t{1} << values.size();
  // Fixed chunking keeps the merge independent of the thread count.
  const std::uint64_t chunk = std::max<std::uint64_t>(total / 64, 1024);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    auto& part = parts[static_cast<std::size_t>(c)];
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      if (tables.sum(mask) >= 0) part.push_back(mask);
    }
  }
  std::size_t size = 0;
  for (const auto& p : parts) size += p.size();
  std::vector<std::uint64_t> out;
  out.reserve(size);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace extremal::kernels
