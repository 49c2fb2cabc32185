// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mpseg/core.hpp"

namespace mpseg {

/// Nearest-neighbor distance P[i] and start index I[i] for every subsequence.
struct MatrixProfile {
  std::vector<double> distances;
  std::vector<std::int64_t> indices;

  std::size_t size() const noexcept { return distances.size(); }
};

enum class ProfileEngine { kBrute, kStomp, kConv };

/// Work partitioning for the batched convolution engine. Results never
/// depend on these values.
struct ConvOptions {
  std::size_t batch_rows = 256;
  std::size_t workers = 1;
};

// z-normalized Euclidean distance between two equal-length windows. A
// constant window normalizes to the zero vector, so two constant windows are
// at distance 0 and a constant vs a non-constant window at sqrt(m).
double znorm_distance(std::span<const double> a, std::span<const double> b);

// Distance from a sliding dot product and the two windows' statistics,
// sqrt(2m(1 - (qt - m mu_a mu_b) / (m sigma_a sigma_b))) with the radicand
// clamped to [0, 4m]. Zero-sigma cells follow the znorm_distance policy.
double distance_from_dot(long double qt, std::size_t m, long double mean_a,
                         long double std_a, long double mean_b, long double std_b);

// O(l^2 m) reference: every pair through znorm_distance.
MatrixProfile brute_force_profile(const TimeSeries& series, const WindowConfig& cfg);

// Sequential diagonal-recurrence profile.
MatrixProfile stomp_profile(const TimeSeries& series, const WindowConfig& cfg);

// Convolution-batched profile: the l windows form a kernel bank that is
// cross-correlated against the series in row batches, each batch turned
// into distance rows, masked and reduced independently.
MatrixProfile conv_profile(const TimeSeries& series, const WindowConfig& cfg,
                           const ConvOptions& options = {});

MatrixProfile compute_profile(ProfileEngine engine, const TimeSeries& series,
                              const WindowConfig& cfg, const ConvOptions& options = {});

// Visits every row of the sliding dot-product matrix in order, row 0 by
// direct products and each later row from its predecessor via
// QT[i][j] = QT[i-1][j-1] - t[i-1] t[j-1] + t[i+m-1] t[j+m-1].
void for_each_stomp_row(std::span<const double> values, std::size_t m,
                        const std::function<void(std::size_t, std::span<const long double>)>& visit);

// Batched valid-mode cross-correlation of kernels [row_begin, row_end) (the
// windows starting there) against the whole series. out is row-major with
// (row_end - row_begin) rows of l entries.
void batched_sliding_dot(std::span<const double> values, std::size_t m,
                         std::size_t row_begin, std::size_t row_end,
                         std::span<long double> out);

// Throws no-valid-neighbor when some row would have every candidate masked.
void check_has_neighbors(std::size_t profile_length, std::size_t exclusion_zone);

}  // namespace mpseg
