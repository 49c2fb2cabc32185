// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/eval.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "mpseg/error.hpp"

namespace mpseg {

ScoreCard ScoreCard::from_counts(std::int64_t tp, std::int64_t fp, std::int64_t tn,
                                 std::int64_t fn) {
  ScoreCard s;
  s.tp = tp;
  s.fp = fp;
  s.tn = tn;
  s.fn = fn;
  s.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.f1 = s.precision + s.recall > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  s.fpr = fp + tn > 0 ? static_cast<double>(fp) / static_cast<double>(fp + tn) : 0.0;
  return s;
}

ScoreCard score(std::span<const std::uint8_t> predicted, const GroundTruth& truth,
                std::size_t l) {
  if (predicted.size() != l) {
    throw Error(ErrorCode::kDimension, "prediction length " +
                                           std::to_string(predicted.size()) +
                                           " does not match l = " + std::to_string(l));
  }
  // Positives are exactly the indices above the start, so the confusion
  // counts split into a prefix and a suffix.
  std::size_t first_positive = l;
  if (truth.anomaly_start) {
    const std::int64_t start = *truth.anomaly_start;
    first_positive = start < 0 ? 0 : std::min<std::size_t>(l, static_cast<std::size_t>(start) + 1);
  }
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t i = 0; i < l; ++i) {
    const bool pred = predicted[i] != 0;
    if (i >= first_positive) {
      pred ? ++tp : ++fn;
    } else {
      pred ? ++fp : ++tn;
    }
  }
  return ScoreCard::from_counts(tp, fp, tn, fn);
}

GroundTruth to_subsequence_truth(const GroundTruth& raw_truth, std::size_t offset) {
  if (!raw_truth.anomaly_start) return {};
  return {*raw_truth.anomaly_start - static_cast<std::int64_t>(offset)};
}

std::size_t ExperimentTable::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.ok() ? 0 : 1;
  return n;
}

namespace {

template <typename Field>
double mean_over_ok(const std::vector<ExperimentRow>& rows, Field field) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    sum += field(r);
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

double ExperimentTable::mean_f1() const {
  return mean_over_ok(rows, [](const ExperimentRow& r) { return r.score.f1; });
}

double ExperimentTable::mean_fpr() const {
  return mean_over_ok(rows, [](const ExperimentRow& r) { return r.score.fpr; });
}

double ExperimentTable::mean_runtime() const {
  return mean_over_ok(rows, [](const ExperimentRow& r) { return r.timings.total(); });
}

ExperimentTable run_detection_experiment(std::span<const Dataset> datasets,
                                         const PipelineConfig& config) {
  config.validate();
  ExperimentTable table;
  for (const auto& ds : datasets) {
    ExperimentRow row;
    row.name = ds.name;
    row.length = ds.series.size();
    try {
      Analysis analysis = analyze(ds.series, config);
      row.report = detect_on(analysis, config.epsilon, config.burn_in);
      row.timings = analysis.timings;
      if (row.report.onset_index) {
        row.onset_raw = static_cast<std::int64_t>(*row.report.onset_index + analysis.offset);
      }
      row.score = score(row.report.labels, to_subsequence_truth(ds.truth, analysis.offset),
                        row.report.labels.size());
    } catch (const Error& e) {
      row.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<AblationRow> run_threshold_ablation(std::span<const Dataset> clean,
                                                const PipelineConfig& config) {
  config.validate();
  std::vector<AblationRow> rows;
  for (const auto& ds : clean) {
    AblationRow row;
    row.name = ds.name;
    try {
      Analysis analysis = analyze(ds.series, config);
      const GroundTruth truth = to_subsequence_truth(ds.truth, analysis.offset);
      const auto ungated = detect_on_ungated(analysis, config.burn_in);
      const auto gated = detect_on(analysis, config.epsilon, config.burn_in);
      row.min_cad = gated.min_cad;
      row.fpr_without = score(ungated.labels, truth, ungated.labels.size()).fpr;
      row.fpr_with = score(gated.labels, truth, gated.labels.size()).fpr;
    } catch (const Error& e) {
      row.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepPoint> run_epsilon_sweep(const Dataset& anomalous, const Dataset& clean,
                                          const PipelineConfig& config,
                                          std::span<const double> epsilon_grid) {
  config.validate();
  for (double eps : epsilon_grid) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw Error(ErrorCode::kConfiguration, "epsilon grid values must lie in [0, 1]");
    }
  }
  Analysis anomalous_run = analyze(anomalous.series, config);
  Analysis clean_run = analyze(clean.series, config);
  const GroundTruth anomalous_truth = to_subsequence_truth(anomalous.truth, anomalous_run.offset);
  const GroundTruth clean_truth = to_subsequence_truth(clean.truth, clean_run.offset);

  std::vector<SweepPoint> points;
  for (double eps : epsilon_grid) {
    const auto a = detect_on(anomalous_run, eps, config.burn_in);
    const auto c = detect_on(clean_run, eps, config.burn_in);
    SweepPoint p;
    p.epsilon = eps;
    p.f1 = score(a.labels, anomalous_truth, a.labels.size()).f1;
    p.fpr = score(c.labels, clean_truth, c.labels.size()).fpr;
    p.fired_anomalous = a.anomaly_detected;
    p.fired_clean = c.anomaly_detected;
    points.push_back(p);
  }
  return points;
}

std::vector<double> parse_epsilon_grid(const std::string& text) {
  auto fail = [&] {
    throw Error(ErrorCode::kConfiguration, "bad epsilon grid '" + text + "', want start:stop:step");
  };
  double start = 0.0, stop = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (text.find(':') == std::string::npos) {
    // A single value.
    if (!(in >> start) || !in.eof()) fail();
    return {start};
  }
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':') fail();
  in >> std::ws;
  if (!in.eof() || !(step > 0.0) || stop < start) fail();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    // Snap to 12 decimals so 0.1:0.8:0.1 yields 0.3, not 0.30000000000000004.
    grid.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
  }
  return grid;
}

namespace {

std::string fixed(double v, int digits = 3) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

}  // namespace

std::string experiment_csv(const ExperimentTable& table) {
  std::ostringstream out;
  out << "dataset,length,status,anomaly_detected,onset_index_raw,min_cad,tp,fp,tn,fn,"
         "precision,recall,f1,fpr,profile_s,segmentation_s,detection_s,error\n";
  for (const auto& r : table.rows) {
    out << r.name << ',' << r.length << ',' << (r.ok() ? "ok" : "failed") << ',';
    if (r.ok()) {
      out << (r.report.anomaly_detected ? "true" : "false") << ','
          << (r.onset_raw ? std::to_string(*r.onset_raw) : "") << ','
          << fixed(r.report.min_cad, 6) << ',' << r.score.tp << ',' << r.score.fp << ','
          << r.score.tn << ',' << r.score.fn << ',' << fixed(r.score.precision, 6) << ','
          << fixed(r.score.recall, 6) << ',' << fixed(r.score.f1, 6) << ','
          << fixed(r.score.fpr, 6) << ',' << fixed(r.timings.profile_seconds, 6) << ','
          << fixed(r.timings.segmentation_seconds, 6) << ','
          << fixed(r.timings.detection_seconds, 6) << ",\n";
    } else {
      std::string msg = r.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << ",,,,,,,,,,,,,," << msg << '\n';
    }
  }
  return out.str();
}

std::string experiment_text(const ExperimentTable& table) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "Dataset" << std::right << std::setw(8) << "F1"
      << std::setw(8) << "FPR" << std::setw(10) << "Onset" << std::setw(9) << "minCAD"
      << std::setw(12) << "Time(s)" << '\n';
  for (const auto& r : table.rows) {
    out << std::left << std::setw(24) << r.name << std::right;
    if (!r.ok()) {
      out << "  error: " << r.error << '\n';
      continue;
    }
    out << std::setw(8) << fixed(r.score.f1) << std::setw(8) << fixed(r.score.fpr)
        << std::setw(10) << (r.onset_raw ? std::to_string(*r.onset_raw) : "-")
        << std::setw(9) << fixed(r.report.min_cad) << std::setw(12)
        << fixed(r.timings.total()) << '\n';
  }
  out << std::left << std::setw(24) << "Average" << std::right << std::setw(8)
      << fixed(table.mean_f1()) << std::setw(8) << fixed(table.mean_fpr()) << std::setw(10)
      << "" << std::setw(9) << "" << std::setw(12) << fixed(table.mean_runtime()) << '\n';
  return out.str();
}

std::string ablation_csv(std::span<const AblationRow> rows) {
  std::ostringstream out;
  out << "dataset,status,min_cad,fpr_without_epsilon,fpr_with_epsilon,error\n";
  for (const auto& r : rows) {
    if (r.ok()) {
      out << r.name << ",ok," << fixed(r.min_cad, 6) << ',' << fixed(r.fpr_without, 6) << ','
          << fixed(r.fpr_with, 6) << ",\n";
    } else {
      std::string msg = r.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out << r.name << ",failed,,,," << msg << '\n';
    }
  }
  return out.str();
}

std::string ablation_text(std::span<const AblationRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "Dataset" << std::right << std::setw(14)
      << "Without eps" << std::setw(12) << "With eps" << std::setw(10) << "minCAD" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(24) << r.name << std::right;
    if (!r.ok()) {
      out << "  error: " << r.error << '\n';
      continue;
    }
    out << std::setw(14) << fixed(r.fpr_without) << std::setw(12) << fixed(r.fpr_with)
        << std::setw(10) << fixed(r.min_cad) << '\n';
  }
  return out.str();
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << "epsilon,f1,fpr\n";
  for (const auto& p : points) {
    out << format_double(p.epsilon) << ',' << fixed(p.f1, 6) << ',' << fixed(p.fpr, 6) << '\n';
  }
  return out.str();
}

}  // namespace mpseg
