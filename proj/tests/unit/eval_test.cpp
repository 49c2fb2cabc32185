// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mpseg/error.hpp"
#include "mpseg/eval.hpp"
#include "oracles.hpp"

using namespace mpseg;

namespace {

PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.m = 50;
  cfg.burn_in = 10;
  cfg.workers = 1;
  return cfg;
}

SyntheticSpec small_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.total_length = 900;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("score confusion matrices by hand", "[eval]") {
  auto s = score(std::vector<std::uint8_t>{0, 0, 1, 1}, GroundTruth{1}, 4);
  CHECK(s.tp == 2);
  CHECK(s.fp == 0);
  CHECK(s.tn == 2);
  CHECK(s.fn == 0);
  CHECK(s.f1 == 1.0);
  CHECK(s.fpr == 0.0);

  s = score(std::vector<std::uint8_t>(10, 0), GroundTruth{}, 10);
  CHECK(s.tn == 10);
  CHECK(s.fpr == 0.0);
  CHECK(s.f1 == 0.0);

  s = score(std::vector<std::uint8_t>{1, 1, 1, 1}, GroundTruth{1}, 4);
  CHECK(s.tp == 2);
  CHECK(s.fp == 2);
  CHECK(s.fpr == 1.0);
  CHECK(s.precision == 0.5);
  CHECK(s.recall == 1.0);
  CHECK(s.f1 == Catch::Approx(2.0 / 3.0).epsilon(1e-15));

  try {
    score(std::vector<std::uint8_t>{1, 0}, GroundTruth{0}, 3);
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimension);
  }
}

TEST_CASE("score identities hold on random confusion matrices", "[eval][property]") {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    std::vector<std::uint8_t> pred(l);
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0, 1)(rng));
    for (auto& y : pred) y = coin(rng) ? 1 : 0;
    GroundTruth truth;
    if (trial % 5) {
      truth.anomaly_start = std::uniform_int_distribution<std::int64_t>(-2, static_cast<std::int64_t>(l))(rng);
    }
    const auto s = score(pred, truth, l);
    const auto c = oracle::naive_confusion(pred, truth.anomaly_start);
    REQUIRE(s.tp == c.tp);
    REQUIRE(s.fp == c.fp);
    REQUIRE(s.tn == c.tn);
    REQUIRE(s.fn == c.fn);
    REQUIRE(s.tp + s.fp + s.tn + s.fn == static_cast<std::int64_t>(l));
    const double p = c.tp + c.fp ? double(c.tp) / double(c.tp + c.fp) : 0.0;
    const double r = c.tp + c.fn ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    const double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    const double fpr = c.fp + c.tn ? double(c.fp) / double(c.fp + c.tn) : 0.0;
    REQUIRE(std::abs(s.f1 - f1) <= 1e-12);
    REQUIRE(std::abs(s.fpr - fpr) <= 1e-12);
  }
}

TEST_CASE("to_subsequence_truth shifts by the trim offset", "[eval]") {
  CHECK(*to_subsequence_truth(GroundTruth{1080}, 30).anomaly_start == 1050);
  CHECK_FALSE(to_subsequence_truth(GroundTruth{}, 30).anomaly_start);
}

TEST_CASE("run_detection_experiment handles empty and failing batches", "[eval]") {
  const auto empty = run_detection_experiment({}, small_config());
  CHECK(empty.rows.empty());
  CHECK(empty.failures() == 0);

  std::vector<Dataset> data;
  data.push_back({"short", TimeSeries(std::vector<double>(40, 1.0)), {}});
  auto s = generate_synthetic(small_spec(1));
  data.push_back({"synthetic", s.series, s.truth});
  const auto table = run_detection_experiment(data, small_config());
  REQUIRE(table.rows.size() == 2);
  CHECK_FALSE(table.rows[0].ok());
  CHECK(table.rows[0].error.find("invalid-trim") != std::string::npos);
  CHECK(table.rows[1].ok());
  CHECK(table.failures() == 1);
  CHECK(table.rows[1].report.anomaly_detected);
  CHECK(table.rows[1].score.f1 > 0.8);
  CHECK(table.rows[1].timings.profile_seconds > 0.0);
  CHECK(experiment_csv(table).find("short,40,failed") != std::string::npos);
}

TEST_CASE("threshold ablation never raises FPR", "[eval]") {
  CHECK(run_threshold_ablation({}, small_config()).empty());
  std::vector<Dataset> clean;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto c = generate_clean(small_spec(seed));
    clean.push_back({"clean", c.series, c.truth});
  }
  for (const auto& row : run_threshold_ablation(clean, small_config())) {
    REQUIRE(row.ok());
    CHECK(row.fpr_with <= row.fpr_without);
    if (row.min_cad >= 0.35) CHECK(row.fpr_with == 0.0);
    if (row.min_cad < 0.35) CHECK(row.fpr_with == row.fpr_without);
  }
}

TEST_CASE("epsilon sweep boundaries and monotonicity", "[eval]") {
  auto a = generate_synthetic(small_spec(2));
  auto c = generate_clean(small_spec(3));
  const Dataset anomalous{"a", a.series, a.truth}, clean{"c", c.series, c.truth};

  const auto zero = run_epsilon_sweep(anomalous, clean, small_config(), std::vector<double>{0.0});
  CHECK(zero[0].f1 == 0.0);
  CHECK(zero[0].fpr == 0.0);

  const auto one = run_epsilon_sweep(anomalous, clean, small_config(), std::vector<double>{1.0});
  CHECK(one[0].fired_anomalous);

  const auto grid = parse_epsilon_grid("0.1:0.8:0.1");
  const auto points = run_epsilon_sweep(anomalous, clean, small_config(), grid);
  REQUIRE(points.size() == 8);
  for (std::size_t k = 1; k < points.size(); ++k) {
    CHECK(points[k].f1 >= points[k - 1].f1);
    CHECK(points[k].fpr >= points[k - 1].fpr);
  }
  const auto csv = sweep_csv(points);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("parse_epsilon_grid", "[eval]") {
  const auto g = parse_epsilon_grid("0.1:0.8:0.1");
  REQUIRE(g.size() == 8);
  CHECK(g.front() == 0.1);
  CHECK(g[2] == 0.3);
  CHECK(g.back() == 0.8);
  CHECK(parse_epsilon_grid("0.35") == std::vector<double>{0.35});
  CHECK_THROWS_AS(parse_epsilon_grid("0.1:0.8"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("0.5:0.1:0.1"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("a:b:c"), Error);
}
