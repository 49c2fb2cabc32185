// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mpseg/error.hpp"

namespace mpseg {

namespace {

double wave(const Regime& r, std::size_t t) {
  double phase = std::fmod(static_cast<double>(t) / r.period, 1.0);
  switch (r.waveform) {
    case Waveform::kSine: return r.amplitude * std::sin(2.0 * std::numbers::pi * phase);
    case Waveform::kSquare: return phase < 0.5 ? r.amplitude : -r.amplitude;
    case Waveform::kTriangle: return r.amplitude * (1.0 - 4.0 * std::abs(phase - 0.5));
    case Waveform::kSawtooth: return r.amplitude * (2.0 * phase - 1.0);
  }
  return 0.0;
}

void validate(const SyntheticSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfiguration, what); };
  if (spec.total_length < 2) fail("synthetic series needs at least 2 samples");
  if (!(spec.boundary_fraction > 0.0 && spec.boundary_fraction < 1.0)) {
    fail("boundary fraction must lie in (0, 1)");
  }
  for (const Regime* r : {&spec.regime_a, &spec.regime_b}) {
    if (!(r->period > 0.0) || !std::isfinite(r->period)) fail("regime period must be positive");
    if (!std::isfinite(r->amplitude)) fail("regime amplitude must be finite");
  }
  if (!(spec.noise_std >= 0.0) || !std::isfinite(spec.noise_std)) {
    fail("noise standard deviation must be non-negative");
  }
}

std::vector<double> render(const SyntheticSpec& spec, std::size_t boundary) {
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(spec.total_length);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double clean = t < boundary ? wave(spec.regime_a, t)
                                      : wave(spec.regime_b, t - boundary);
    values[t] = clean + spec.noise_std * noise(rng);
  }
  return values;
}

}  // namespace

Waveform parse_waveform(const std::string& name) {
  if (name == "sine") return Waveform::kSine;
  if (name == "square") return Waveform::kSquare;
  if (name == "triangle") return Waveform::kTriangle;
  if (name == "sawtooth") return Waveform::kSawtooth;
  throw Error(ErrorCode::kConfiguration, "unknown waveform '" + name + "'");
}

std::string to_string(Waveform waveform) {
  switch (waveform) {
    case Waveform::kSine: return "sine";
    case Waveform::kSquare: return "square";
    case Waveform::kTriangle: return "triangle";
    case Waveform::kSawtooth: return "sawtooth";
  }
  return "sine";
}

std::size_t SyntheticSpec::boundary_index() const {
  return static_cast<std::size_t>(std::llround(boundary_fraction * static_cast<double>(total_length)));
}

SyntheticSeries generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  if (spec.regime_a == spec.regime_b) {
    throw Error(ErrorCode::kConfiguration, "regimes A and B are identical");
  }
  const std::size_t boundary = spec.boundary_index();
  return {TimeSeries(render(spec, boundary), "synthetic"),
          GroundTruth{static_cast<std::int64_t>(boundary)}};
}

SyntheticSeries generate_clean(const SyntheticSpec& spec) {
  validate(spec);
  return {TimeSeries(render(spec, spec.total_length), "synthetic-clean"), GroundTruth{}};
}

}  // namespace mpseg
