// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/detection.hpp"

#include <algorithm>
#include <string>

#include "mpseg/error.hpp"

namespace mpseg {

namespace {

std::size_t argmin(std::span<const double> cad) {
  if (cad.empty()) throw Error(ErrorCode::kEmptyInput, "CAD curve is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < cad.size(); ++i) {
    if (cad[i] < cad[best]) best = i;
  }
  return best;
}

DetectionReport build(std::span<const double> cad, double epsilon, bool fire_always) {
  const std::size_t at = argmin(cad);
  DetectionReport report;
  report.min_cad = cad[at];
  report.epsilon = epsilon;
  report.anomaly_detected = fire_always || report.min_cad < epsilon;
  report.labels.assign(cad.size(), 0);
  if (report.anomaly_detected) {
    report.onset_index = at;
    std::fill(report.labels.begin() + static_cast<std::ptrdiff_t>(at) + 1,
              report.labels.end(), std::uint8_t{1});
  }
  return report;
}

}  // namespace

DetectionReport detect(std::span<const double> cad, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kConfiguration,
                "epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
  return build(cad, epsilon, false);
}

DetectionReport detect_ungated(std::span<const double> cad) {
  return build(cad, 1.0, true);
}

std::vector<std::uint8_t> point_labels(const DetectionReport& report, std::size_t n) {
  std::vector<std::uint8_t> out(n, 0);
  if (report.onset_index) {
    for (std::size_t p = *report.onset_index + 1; p < n; ++p) out[p] = 1;
  }
  return out;
}

EpsilonRecommendation recommend_epsilon(std::span<const std::vector<double>> clean_curves) {
  if (clean_curves.empty()) {
    throw Error(ErrorCode::kEmptyInput, "at least one clean CAD curve is required");
  }
  EpsilonRecommendation rec;
  rec.epsilon = 1.0;
  for (const auto& curve : clean_curves) {
    rec.epsilon = std::min(rec.epsilon, curve[argmin(curve)]);
  }
  rec.within_band = rec.epsilon >= EpsilonRecommendation::kBandLow &&
                    rec.epsilon <= EpsilonRecommendation::kBandHigh;
  return rec;
}

}  // namespace mpseg
