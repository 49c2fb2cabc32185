// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "mpseg/core.hpp"

namespace mpseg {

/// Where the anomalous regime begins, in sample coordinates. Absent for a
/// clean series.
struct GroundTruth {
  std::optional<std::int64_t> anomaly_start;
};

enum class Waveform { kSine, kSquare, kTriangle, kSawtooth };

Waveform parse_waveform(const std::string& name);
std::string to_string(Waveform waveform);

struct Regime {
  double period = 32.0;
  Waveform waveform = Waveform::kSine;
  double amplitude = 1.0;

  bool operator==(const Regime&) const = default;
};

/// Two periodic regimes joined at round(boundary_fraction * total_length),
/// plus zero-mean Gaussian noise.
struct SyntheticSpec {
  std::size_t total_length = 1800;
  double boundary_fraction = 0.6;
  Regime regime_a{32.0, Waveform::kSine, 1.0};
  Regime regime_b{48.0, Waveform::kSine, 1.0};
  double noise_std = 0.05;
  std::uint64_t seed = 0;

  std::size_t boundary_index() const;
};

struct SyntheticSeries {
  TimeSeries series;
  GroundTruth truth;
};

// Regime A up to the boundary, regime B after it. Deterministic in seed.
SyntheticSeries generate_synthetic(const SyntheticSpec& spec);

// Regime A for the whole length; no ground-truth anomaly.
SyntheticSeries generate_clean(const SyntheticSpec& spec);

}  // namespace mpseg
