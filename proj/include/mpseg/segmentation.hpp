// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpseg {

// Which maximum the clipped arc ratio is divided by.
enum class CadDenominator { kCorrected, kRaw };

struct ArcDensity {
  std::vector<std::int64_t> raw_counts;
  std::vector<double> idealized;
  std::vector<double> corrected;
};

/// Link between a subsequence and its nearest neighbor.
struct Arc {
  std::int64_t from = 0;
  std::int64_t to = 0;
};

// Crossing counts for an explicit arc list over positions [0, l): arc
// (a, b) covers min(a, b) <= t < max(a, b). +1/-1 at the ends, prefix sum.
std::vector<std::int64_t> count_crossings(std::span<const Arc> arcs, std::size_t l);

// Number of nearest-neighbor arcs crossing each position. The arc of
// subsequence i spans lo = min(i, I[i]) to hi = max(i, I[i]) and covers
// positions lo <= t < hi.
std::vector<std::int64_t> arc_counts(std::span<const std::int64_t> indices, std::size_t l);

// Expected crossing count under uniformly random neighbors, 2 i (l - i) / l.
std::vector<double> idealized_arc_count(std::size_t l);

// min(AC / IAC, 1) with positions that have IAC = 0, or lie within
// edge_guard of either end, pinned to 1; then divided by the maximum (of
// the clipped curve by default, of the raw counts with kRaw). A curve whose
// maximum is 0 becomes all ones.
std::vector<double> corrected_arc_density(std::span<const std::int64_t> raw_counts,
                                          std::span<const double> idealized,
                                          std::size_t edge_guard,
                                          CadDenominator denominator = CadDenominator::kCorrected);

ArcDensity arc_density(std::span<const std::int64_t> indices, std::size_t edge_guard,
                       CadDenominator denominator = CadDenominator::kCorrected);

}  // namespace mpseg
