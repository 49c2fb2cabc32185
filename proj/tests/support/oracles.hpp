// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference computations. Nothing here shares code with the
// library paths it is used to check.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace mpseg::oracle {

struct Profile {
  std::vector<double> distances;
  std::vector<std::int64_t> indices;
  // Second-smallest unmasked distance minus the smallest, per row.
  std::vector<double> margins;
};

// Each window explicitly z-normalized into its own vector, then plain
// Euclidean distances between those vectors.
Profile exhaustive_profile(std::span<const double> values, std::size_t m, std::size_t zone);

double direct_dot(std::span<const double> values, std::size_t i, std::size_t j, std::size_t m);

// Direct per-window mean and population standard deviation.
void direct_mean_std(std::span<const double> window, double& mean, double& std);

// For every position, loop over every arc.
std::vector<std::int64_t> naive_arc_counts(std::span<const std::int64_t> indices);

struct Counts {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};
Counts naive_confusion(std::span<const std::uint8_t> predicted,
                       std::optional<std::int64_t> anomaly_start);

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n);
std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n, double offset);

}  // namespace mpseg::oracle
