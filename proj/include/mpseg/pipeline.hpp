// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "mpseg/core.hpp"
#include "mpseg/detection.hpp"
#include "mpseg/io.hpp"
#include "mpseg/matrix_profile.hpp"
#include "mpseg/segmentation.hpp"

namespace mpseg {

// MPSEG_WORKERS when set to a positive integer, else the hardware thread count.
std::size_t default_workers();

struct PipelineConfig {
  std::size_t m = 100;
  double epsilon = 0.35;
  std::size_t burn_in = 30;
  ColumnSelector column = std::size_t{0};
  std::size_t batch_rows = 256;
  std::size_t workers = default_workers();
  CadDenominator cad_denominator = CadDenominator::kCorrected;
  ProfileEngine engine = ProfileEngine::kConv;
  // Positions this close to either end carry no segmentation evidence.
  // Defaults to m.
  std::optional<std::size_t> edge_guard;
  std::filesystem::path output_path;

  std::size_t effective_edge_guard() const { return edge_guard.value_or(m); }
  // Throws a configuration error on m < 4, epsilon outside [0, 1], or a zero
  // batch size / worker count.
  void validate() const;
};

struct StageTimings {
  double profile_seconds = 0.0;
  double segmentation_seconds = 0.0;
  double detection_seconds = 0.0;

  double total() const { return profile_seconds + segmentation_seconds + detection_seconds; }
};

/// Everything computed before the threshold is applied. `offset` maps
/// subsequence i back to raw sample i + offset.
struct Analysis {
  std::size_t offset = 0;
  std::size_t m = 0;
  MatrixProfile profile;
  ArcDensity density;
  StageTimings timings;
};

Analysis analyze(const TimeSeries& raw, const PipelineConfig& config);

// Applies the threshold and stamps m and burn-in on the report. Adds the
// detection time to analysis.timings.
DetectionReport detect_on(Analysis& analysis, double epsilon, std::size_t burn_in);
DetectionReport detect_on_ungated(Analysis& analysis, std::size_t burn_in);

struct PipelineResult {
  Analysis analysis;
  DetectionReport report;

  // Onset in raw-file coordinates.
  std::optional<std::int64_t> onset_raw() const;
};

PipelineResult run_pipeline(const TimeSeries& raw, const PipelineConfig& config);

}  // namespace mpseg
