// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mpseg/error.hpp"
#include "mpseg/pipeline.hpp"
#include "mpseg/synthetic.hpp"

using namespace mpseg;

TEST_CASE("synthetic boundary sits at the requested fraction", "[synthetic]") {
  SyntheticSpec spec;
  spec.total_length = 1800;
  spec.boundary_fraction = 0.6;
  const auto s = generate_synthetic(spec);
  CHECK(s.series.size() == 1800);
  CHECK(*s.truth.anomaly_start == 1080);
}

TEST_CASE("synthetic generation is deterministic per seed", "[synthetic]") {
  SyntheticSpec spec;
  spec.seed = 42;
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  CHECK(std::equal(a.series.values().begin(), a.series.values().end(), b.series.values().begin()));
  spec.seed = 43;
  const auto c = generate_synthetic(spec);
  CHECK_FALSE(std::equal(a.series.values().begin(), a.series.values().end(),
                         c.series.values().begin()));
}

TEST_CASE("clean variant repeats regime A and has no truth", "[synthetic]") {
  SyntheticSpec spec;
  spec.noise_std = 0.0;
  const auto clean = generate_clean(spec);
  CHECK_FALSE(clean.truth.anomaly_start);
  for (std::size_t t = 0; t + 32 < clean.series.size(); t += 97) {
    CHECK(clean.series[t] == Catch::Approx(clean.series[t + 32]).margin(1e-9));
  }
}

TEST_CASE("waveforms and validation", "[synthetic]") {
  for (const char* name : {"sine", "square", "triangle", "sawtooth"}) {
    CHECK(to_string(parse_waveform(name)) == name);
  }
  CHECK_THROWS_AS(parse_waveform("noise"), Error);

  SyntheticSpec same;
  same.regime_b = same.regime_a;
  try {
    generate_synthetic(same);
    FAIL("identical regimes must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfiguration);
  }
  SyntheticSpec bad;
  bad.boundary_fraction = 1.0;
  CHECK_THROWS_AS(generate_synthetic(bad), Error);
  bad = {};
  bad.regime_a.period = 0.0;
  CHECK_THROWS_AS(generate_synthetic(bad), Error);
  bad = {};
  bad.noise_std = -1.0;
  CHECK_THROWS_AS(generate_clean(bad), Error);
}

TEST_CASE("pipeline onset lands near the synthetic boundary", "[synthetic][pipeline]") {
  SyntheticSpec spec;
  spec.seed = 9;
  const auto s = generate_synthetic(spec);
  PipelineConfig cfg;
  cfg.workers = 1;
  const auto result = run_pipeline(s.series, cfg);
  REQUIRE(result.report.anomaly_detected);
  CHECK(std::abs(*result.onset_raw() - 1080) <= 100);
  CHECK(result.analysis.offset == 30);
  CHECK(result.report.labels.size() == 1800 - 60 - 100 + 1);
}
