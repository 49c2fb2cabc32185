// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mpseg {

struct DetectionReport {
  bool anomaly_detected = false;
  // Subsequence index of argmin(CAD); set only when the detector fires.
  std::optional<std::size_t> onset_index;
  double min_cad = 1.0;
  // y[i] = 1 for i > onset, 0 otherwise (all zeros without a detection).
  std::vector<std::uint8_t> labels;
  double epsilon = 0.0;
  std::size_t m = 0;
  std::size_t burn_in = 0;
};

// Fires iff min(CAD) < epsilon (strict). Ties in argmin go to the smallest
// index. epsilon must lie in [0, 1].
DetectionReport detect(std::span<const double> cad, double epsilon);

// Threshold disabled: always reports argmin(CAD) as the onset.
DetectionReport detect_ungated(std::span<const double> cad);

// Point-level labels for a series of n samples: p is anomalous iff p > onset.
std::vector<std::uint8_t> point_labels(const DetectionReport& report, std::size_t n);

struct EpsilonRecommendation {
  double epsilon = 1.0;
  static constexpr double kBandLow = 0.3;
  static constexpr double kBandHigh = 0.5;
  bool within_band = false;
};

// Largest epsilon that raises no alarm on any of the given clean curves:
// the minimum over all curves of min(CAD).
EpsilonRecommendation recommend_epsilon(std::span<const std::vector<double>> clean_curves);

}  // namespace mpseg
