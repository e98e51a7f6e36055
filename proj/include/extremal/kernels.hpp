#pragma once

// Subset-sum sign kernels over all 2^n masks of an integer vector.
//
// The *_serial variants sum each mask bit by bit and serve as the reference.
// The *_parallel variants split every mask into a low and a high half, look
// both partial sums up in precomputed tables and spread the mask range over
// OpenMP threads. Results are identical for any thread count: counts are
// reductions of exact integers and collected masks are concatenated in
// chunk order, so the output is always in increasing mask order.
//
// Callers guarantee n <= 30 and that n * max|v| fits in int64.

#include <cstdint>
#include <span>
#include <vector>

namespace extremal::kernels {

inline constexpr int kMaxKernelGround = 30;

std::uint64_t count_nonneg_serial(std::span<const std::int64_t> values);
std::uint64_t count_nonneg_parallel(std::span<const std::int64_t> values);

std::vector<std::uint64_t> collect_nonneg_serial(std::span<const std::int64_t> values);
std::vector<std::uint64_t> collect_nonneg_parallel(std::span<const std::int64_t> values);

/// Number of threads the parallel kernels would use (1 without OpenMP).
int max_threads();

}  // namespace extremal::kernels
