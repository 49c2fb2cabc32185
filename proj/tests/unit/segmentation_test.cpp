// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "mpseg/error.hpp"
#include "mpseg/matrix_profile.hpp"
#include "mpseg/segmentation.hpp"
#include "mpseg/synthetic.hpp"
#include "oracles.hpp"

using namespace mpseg;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected mpseg::Error");
  return ErrorCode::kConfiguration;
}

std::vector<std::int64_t> random_profile_index(std::mt19937_64& rng, std::size_t l) {
  std::uniform_int_distribution<std::int64_t> pick(0, static_cast<std::int64_t>(l) - 1);
  std::vector<std::int64_t> idx(l);
  for (std::size_t i = 0; i < l; ++i) {
    do {
      idx[i] = pick(rng);
    } while (idx[i] == static_cast<std::int64_t>(i));
  }
  return idx;
}

}  // namespace

TEST_CASE("count_crossings on three illustrative arcs", "[segmentation]") {
  const std::vector<Arc> arcs{{100, 450}, {200, 350}, {700, 900}};
  const auto ac = count_crossings(arcs, 1000);
  CHECK(ac[250] == 2);
  CHECK(ac[800] == 1);
  CHECK(ac[500] == 0);
  CHECK(ac[100] == 1);
  CHECK(ac[450] == 0);
  CHECK(ac[449] == 1);
}

TEST_CASE("arc_counts small cases", "[segmentation]") {
  CHECK(arc_counts(std::vector<std::int64_t>{1, 0, 3, 2}, 4) ==
        std::vector<std::int64_t>{2, 0, 2, 0});
  CHECK(arc_counts(std::vector<std::int64_t>{1, 0}, 2) == std::vector<std::int64_t>{2, 0});
  CHECK(code_of([] { arc_counts(std::vector<std::int64_t>{1, 5}, 2); }) ==
        ErrorCode::kMalformedProfile);
  CHECK(code_of([] { arc_counts(std::vector<std::int64_t>{0, 0}, 2); }) ==
        ErrorCode::kMalformedProfile);
  CHECK(code_of([] { arc_counts(std::vector<std::int64_t>{-1, 0}, 2); }) ==
        ErrorCode::kMalformedProfile);
  CHECK(code_of([] { arc_counts(std::vector<std::int64_t>{1, 0}, 3); }) == ErrorCode::kDimension);
}

TEST_CASE("arc_counts equals the per-arc loop", "[segmentation][property]") {
  std::mt19937_64 rng(200);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t l = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    const auto idx = random_profile_index(rng, l);
    const auto ac = arc_counts(idx, l);
    REQUIRE(ac == oracle::naive_arc_counts(idx));
    // Every arc starts exactly once.
    std::int64_t starts = 0;
    std::int64_t prev = 0;
    for (std::size_t t = 0; t < l; ++t) {
      if (ac[t] > prev) starts += ac[t] - prev;
      prev = ac[t];
    }
    REQUIRE(starts <= static_cast<std::int64_t>(l));
    REQUIRE(ac[l - 1] == 0);
  }
}

TEST_CASE("arc_counts mirrors under index reversal", "[segmentation][property]") {
  std::mt19937_64 rng(3);
  for (std::size_t l = 2; l <= 7; ++l) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto idx = random_profile_index(rng, l);
      std::vector<std::int64_t> rev(l);
      const auto last = static_cast<std::int64_t>(l) - 1;
      for (std::size_t i = 0; i < l; ++i) rev[last - static_cast<std::int64_t>(i)] = last - idx[i];
      const auto ac = oracle::naive_arc_counts(idx);
      const auto ac_rev = arc_counts(rev, l);
      // An arc covering lo <= t < hi covers l-1-hi <= t' < l-1-lo once
      // reversed, i.e. t' = l - 2 - t.
      for (std::size_t t = 0; t + 1 < l; ++t) REQUIRE(ac_rev[l - 2 - t] == ac[t]);
      REQUIRE(ac_rev[l - 1] == 0);

      const auto iac = idealized_arc_count(l);
      for (std::size_t i = 1; i < l; ++i) REQUIRE(iac[i] == iac[l - i]);
    }
  }
}

TEST_CASE("idealized_arc_count values", "[segmentation]") {
  const auto iac100 = idealized_arc_count(100);
  CHECK(iac100[0] == 0.0);
  CHECK(iac100[50] == 50.0);
  CHECK(idealized_arc_count(7)[2] == Catch::Approx(20.0 / 7.0).epsilon(1e-15));
  CHECK(code_of([] { idealized_arc_count(1); }) == ErrorCode::kInvalidWindowLength);
}

TEST_CASE("corrected_arc_density self-normalizes random-arc behaviour", "[segmentation]") {
  const std::size_t l = 40;
  const auto iac = idealized_arc_count(l);
  std::vector<std::int64_t> ac(l);
  for (std::size_t i = 0; i < l; ++i) ac[i] = static_cast<std::int64_t>(std::ceil(iac[i]));
  const auto cad = corrected_arc_density(ac, iac, 1);
  for (double v : cad) CHECK(v == 1.0);

  ac[17] = 0;
  const auto dip = corrected_arc_density(ac, iac, 1);
  for (std::size_t i = 0; i < l; ++i) CHECK(dip[i] == (i == 17 ? 0.0 : 1.0));
}

TEST_CASE("corrected_arc_density pins the edges", "[segmentation]") {
  const std::size_t l = 30;
  const auto iac = idealized_arc_count(l);
  const std::vector<std::int64_t> zeros(l, 0);
  const auto cad = corrected_arc_density(zeros, iac, 5);
  for (std::size_t i = 0; i < l; ++i) {
    const bool edge = i < 5 || i >= l - 5;
    CHECK(cad[i] == (edge ? 1.0 : 0.0));
  }
  // Guard covering everything leaves nothing to segment.
  for (double v : corrected_arc_density(zeros, iac, 15)) CHECK(v == 1.0);
}

TEST_CASE("corrected_arc_density denominators", "[segmentation]") {
  const std::size_t l = 20;
  const auto iac = idealized_arc_count(l);
  std::vector<std::int64_t> ac(l);
  for (std::size_t i = 0; i < l; ++i) ac[i] = static_cast<std::int64_t>(std::floor(iac[i] / 2.0));
  const auto corrected = corrected_arc_density(ac, iac, 2, CadDenominator::kCorrected);
  const auto raw = corrected_arc_density(ac, iac, 2, CadDenominator::kRaw);
  const double max_raw = static_cast<double>(*std::max_element(ac.begin(), ac.end()));
  for (std::size_t i = 0; i < l; ++i) {
    CHECK(corrected[i] >= 0.0);
    CHECK(corrected[i] <= 1.0);
    CHECK(raw[i] == Catch::Approx(corrected[i] / max_raw).epsilon(1e-15));
  }
  CHECK(*std::max_element(corrected.begin(), corrected.end()) == 1.0);

  const std::vector<std::int64_t> zeros(l, 0);
  for (double v : corrected_arc_density(zeros, iac, 2, CadDenominator::kRaw)) CHECK(v == 1.0);

  CHECK(code_of([&] { corrected_arc_density(ac, std::vector<double>(3), 1); }) ==
        ErrorCode::kDimension);
  CHECK(code_of([&] { corrected_arc_density(ac, iac, 0); }) == ErrorCode::kConfiguration);
}

TEST_CASE("CAD minimum lands on a synthetic regime boundary", "[segmentation]") {
  SyntheticSpec spec;
  spec.seed = 4;
  const auto s = generate_synthetic(spec);
  const std::size_t m = 50;
  const auto mp = conv_profile(s.series, WindowConfig(m));
  const auto density = arc_density(mp.indices, m);
  const auto at = static_cast<std::int64_t>(
      std::min_element(density.corrected.begin(), density.corrected.end()) -
      density.corrected.begin());
  CHECK(std::abs(at - *s.truth.anomaly_start) <= static_cast<std::int64_t>(m));
  for (double v : density.corrected) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
