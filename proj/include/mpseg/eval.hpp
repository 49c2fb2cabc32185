// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpseg/pipeline.hpp"
#include "mpseg/synthetic.hpp"

namespace mpseg {

/// Confusion counts over the scored positions and the rates derived from
/// them. Rates are always recomputed from the counts.
struct ScoreCard {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;

  static ScoreCard from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                               std::int64_t fn);
};

// Subsequence i is truly anomalous iff truth.anomaly_start is set and
// i > *truth.anomaly_start (both in subsequence coordinates).
ScoreCard score(std::span<const std::uint8_t> predicted, const GroundTruth& truth,
                std::size_t l);

// Ground truth given in raw sample coordinates, shifted by the trim offset.
GroundTruth to_subsequence_truth(const GroundTruth& raw_truth, std::size_t offset);

struct Dataset {
  std::string name;
  TimeSeries series;
  GroundTruth truth;  // raw coordinates
};

struct ExperimentRow {
  std::string name;
  std::size_t length = 0;
  std::string error;  // empty on success
  DetectionReport report;
  std::optional<std::int64_t> onset_raw;
  ScoreCard score;
  StageTimings timings;

  bool ok() const { return error.empty(); }
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;

  std::size_t failures() const;
  double mean_f1() const;
  double mean_fpr() const;
  double mean_runtime() const;
};

// trim -> profile -> CAD -> detect -> score for every dataset. A failing
// dataset becomes an error row; the rest of the batch still runs.
ExperimentTable run_detection_experiment(std::span<const Dataset> datasets,
                                         const PipelineConfig& config);

struct AblationRow {
  std::string name;
  std::string error;
  double min_cad = 1.0;
  double fpr_without = 0.0;
  double fpr_with = 0.0;

  bool ok() const { return error.empty(); }
};

// FPR on clean series with the threshold disabled vs at config.epsilon.
std::vector<AblationRow> run_threshold_ablation(std::span<const Dataset> clean,
                                                const PipelineConfig& config);

struct SweepPoint {
  double epsilon = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  bool fired_anomalous = false;
  bool fired_clean = false;
};

// F1 on `anomalous` and FPR on `clean` at each epsilon of the grid. The
// profile and CAD of each series are computed once.
std::vector<SweepPoint> run_epsilon_sweep(const Dataset& anomalous, const Dataset& clean,
                                          const PipelineConfig& config,
                                          std::span<const double> epsilon_grid);

// "start:stop:step", inclusive of stop up to rounding.
std::vector<double> parse_epsilon_grid(const std::string& text);

std::string experiment_csv(const ExperimentTable& table);
std::string experiment_text(const ExperimentTable& table);
std::string ablation_csv(std::span<const AblationRow> rows);
std::string ablation_text(std::span<const AblationRow> rows);
std::string sweep_csv(std::span<const SweepPoint> points);

}  // namespace mpseg
