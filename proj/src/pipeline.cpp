// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <string>
#include <string_view>
#include <thread>

#include "mpseg/error.hpp"

namespace mpseg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::size_t default_workers() {
  if (const char* env = std::getenv("MPSEG_WORKERS")) {
    const std::string_view text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) return value;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfiguration, what); };
  if (m < 4) fail("m must be at least 4");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
  if (batch_rows < 1) fail("batch rows must be at least 1");
  if (workers < 1) fail("workers must be at least 1");
  if (edge_guard && *edge_guard < 1) fail("edge guard must be at least 1");
}

Analysis analyze(const TimeSeries& raw, const PipelineConfig& config) {
  config.validate();
  const TimeSeries series = trim_burn_in(raw, config.burn_in, config.m);

  Analysis out;
  out.offset = config.burn_in;
  out.m = config.m;

  auto start = Clock::now();
  out.profile = compute_profile(config.engine, series, WindowConfig(config.m),
                                ConvOptions{config.batch_rows, config.workers});
  out.timings.profile_seconds = seconds_since(start);

  start = Clock::now();
  out.density = arc_density(out.profile.indices, config.effective_edge_guard(),
                            config.cad_denominator);
  out.timings.segmentation_seconds = seconds_since(start);

  for (double v : out.density.corrected) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kMalformedProfile, "CAD value outside [0, 1]");
    }
  }
  return out;
}

DetectionReport detect_on(Analysis& analysis, double epsilon, std::size_t burn_in) {
  const auto start = Clock::now();
  DetectionReport report = detect(analysis.density.corrected, epsilon);
  analysis.timings.detection_seconds += seconds_since(start);
  report.m = analysis.m;
  report.burn_in = burn_in;
  return report;
}

DetectionReport detect_on_ungated(Analysis& analysis, std::size_t burn_in) {
  DetectionReport report = detect_ungated(analysis.density.corrected);
  report.m = analysis.m;
  report.burn_in = burn_in;
  return report;
}

std::optional<std::int64_t> PipelineResult::onset_raw() const {
  if (!report.onset_index) return std::nullopt;
  return static_cast<std::int64_t>(*report.onset_index + analysis.offset);
}

PipelineResult run_pipeline(const TimeSeries& raw, const PipelineConfig& config) {
  PipelineResult result;
  result.analysis = analyze(raw, config);
  result.report = detect_on(result.analysis, config.epsilon, config.burn_in);
  return result;
}

}  // namespace mpseg
