// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpseg/error.hpp"
#include "mpseg/eval.hpp"
#include "mpseg/io.hpp"
#include "mpseg/pipeline.hpp"
#include "mpseg/synthetic.hpp"

namespace mpseg {

namespace {

struct CommonFlags {
  std::string column = "0";
  std::size_t m = 100;
  double epsilon = 0.35;
  std::size_t burn_in = 30;
  std::size_t batch_rows = 256;
  std::optional<std::size_t> workers;
  std::string cad_denominator = "corrected";
  std::string engine = "conv";

  PipelineConfig config() const {
    PipelineConfig cfg;
    cfg.m = m;
    cfg.epsilon = epsilon;
    cfg.burn_in = burn_in;
    cfg.column = parse_column_selector(column);
    cfg.batch_rows = batch_rows;
    if (workers) cfg.workers = *workers;
    cfg.cad_denominator =
        cad_denominator == "raw" ? CadDenominator::kRaw : CadDenominator::kCorrected;
    cfg.engine = engine == "brute"   ? ProfileEngine::kBrute
                 : engine == "stomp" ? ProfileEngine::kStomp
                                     : ProfileEngine::kConv;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_threshold = true) {
  cmd->add_option("--column", f.column, "CSV column name or 0-based index")
      ->capture_default_str();
  cmd->add_option("--m", f.m, "Subsequence length")->capture_default_str();
  if (with_threshold) {
    cmd->add_option("--epsilon", f.epsilon, "Sensitivity threshold on min CAD")
        ->capture_default_str();
    cmd->add_option("--cad-denominator", f.cad_denominator,
                    "Normalize CAD by the corrected or raw maximum")
        ->check(CLI::IsMember({"corrected", "raw"}))
        ->capture_default_str();
  }
  cmd->add_option("--burn-in", f.burn_in, "Samples dropped from each end")
      ->capture_default_str();
  cmd->add_option("--batch-rows", f.batch_rows, "Kernel rows per convolution batch")
      ->capture_default_str();
  cmd->add_option("--workers", f.workers,
                  "Worker threads (default: MPSEG_WORKERS or hardware threads)");
  cmd->add_option("--engine", f.engine, "Matrix profile engine")
      ->check(CLI::IsMember({"brute", "stomp", "conv"}))
      ->capture_default_str();
}

struct SynthFlags {
  std::size_t length = 1800;
  double boundary = 0.6;
  double period_a = 32.0;
  double period_b = 48.0;
  std::string waveform_a = "sine";
  std::string waveform_b = "sine";
  double amplitude_a = 1.0;
  double amplitude_b = 1.0;
  double noise = 0.05;
  std::uint64_t seed = 0;

  SyntheticSpec spec(std::uint64_t seed_offset = 0) const {
    SyntheticSpec s;
    s.total_length = length;
    s.boundary_fraction = boundary;
    s.regime_a = {period_a, parse_waveform(waveform_a), amplitude_a};
    s.regime_b = {period_b, parse_waveform(waveform_b), amplitude_b};
    s.noise_std = noise;
    s.seed = seed + seed_offset;
    return s;
  }
};

void add_synth(CLI::App* cmd, SynthFlags& f, bool full) {
  cmd->add_option("--length", f.length, "Synthetic series length")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  if (!full) return;
  cmd->add_option("--boundary", f.boundary, "Regime boundary as a fraction of the length")
      ->capture_default_str();
  cmd->add_option("--period-a", f.period_a)->capture_default_str();
  cmd->add_option("--period-b", f.period_b)->capture_default_str();
  cmd->add_option("--waveform-a", f.waveform_a)->capture_default_str();
  cmd->add_option("--waveform-b", f.waveform_b)->capture_default_str();
  cmd->add_option("--amplitude-a", f.amplitude_a)->capture_default_str();
  cmd->add_option("--amplitude-b", f.amplitude_b)->capture_default_str();
  cmd->add_option("--noise", f.noise, "Noise standard deviation")->capture_default_str();
}

GroundTruth parse_truth(const std::string& text) {
  if (text.empty() || text == "clean" || text == "none") return {};
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw Error(ErrorCode::kConfiguration, "bad ground truth '" + text + "'");
  }
  return {value};
}

// Writes to path, or to fallback when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIngestion, "cannot write " + path);
  out << text;
}

std::string profile_csv(const MatrixProfile& mp) {
  std::ostringstream out;
  out << "distance,index\n";
  for (std::size_t i = 0; i < mp.size(); ++i) {
    out << format_double(mp.distances[i]) << ',' << mp.indices[i] << '\n';
  }
  return out.str();
}

std::string cad_csv(const Analysis& a) {
  std::ostringstream out;
  out << "index,raw_index,arc_count,idealized,cad\n";
  const auto& d = a.density;
  for (std::size_t i = 0; i < d.corrected.size(); ++i) {
    out << i << ',' << i + a.offset << ',' << d.raw_counts[i] << ','
        << format_double(d.idealized[i]) << ',' << format_double(d.corrected[i]) << '\n';
  }
  return out.str();
}

std::string labels_csv(const DetectionReport& r, std::size_t offset) {
  std::ostringstream out;
  out << "index,raw_index,label\n";
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    out << i << ',' << i + offset << ',' << static_cast<int>(r.labels[i]) << '\n';
  }
  return out.str();
}

// Inputs that fail to load become error rows instead of aborting the batch.
struct LoadedBatch {
  std::vector<Dataset> datasets;
  std::vector<std::pair<std::string, std::string>> failures;
};

LoadedBatch load_batch(const std::vector<std::string>& inputs,
                       const std::vector<std::string>& truths, const ColumnSelector& column) {
  if (!truths.empty() && truths.size() != inputs.size()) {
    throw Error(ErrorCode::kConfiguration, "--truth must be given once per --input");
  }
  LoadedBatch batch;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const GroundTruth truth = truths.empty() ? GroundTruth{} : parse_truth(truths[k]);
    try {
      batch.datasets.push_back({inputs[k], load_csv(inputs[k], column), truth});
    } catch (const Error& e) {
      batch.failures.emplace_back(inputs[k], std::string(to_string(e.code())) + ": " + e.what());
    }
  }
  return batch;
}

std::vector<Dataset> synthetic_batch(std::size_t count, const SynthFlags& flags, bool clean) {
  std::vector<Dataset> out;
  for (std::size_t k = 0; k < count; ++k) {
    const auto spec = flags.spec(k);
    auto s = clean ? generate_clean(spec) : generate_synthetic(spec);
    out.push_back({(clean ? "synthetic-clean-" : "synthetic-") + std::to_string(spec.seed),
                   std::move(s.series), s.truth});
  }
  return out;
}

int exit_code_for(ErrorCode code) {
  return code == ErrorCode::kConfiguration || code == ErrorCode::kInvalidWindowLength ? 2 : 1;
}

}  // namespace

std::string report_to_json(const DetectionReport& report, std::size_t offset,
                           const std::string& labels_path) {
  nlohmann::ordered_json doc;
  doc["anomaly_detected"] = report.anomaly_detected;
  if (report.onset_index) {
    doc["onset_index_raw"] = static_cast<std::int64_t>(*report.onset_index + offset);
  } else {
    doc["onset_index_raw"] = nullptr;
  }
  doc["min_cad"] = report.min_cad;
  doc["epsilon"] = report.epsilon;
  doc["m"] = report.m;
  doc["burn_in"] = report.burn_in;
  if (labels_path.empty()) {
    doc["labels_path"] = nullptr;
  } else {
    doc["labels_path"] = labels_path;
  }
  return doc.dump(2) + "\n";
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-profile semantic segmentation anomaly detection", "mpseg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mpseg 0.1.0");

  // detect
  CommonFlags detect_flags;
  std::string detect_input, detect_out, detect_cad_out, detect_labels_out;
  auto* detect_cmd = app.add_subcommand("detect", "Detect an anomaly onset in one series");
  add_common(detect_cmd, detect_flags);
  detect_cmd->add_option("--input", detect_input, "Input CSV")->required();
  detect_cmd->add_option("--out", detect_out, "Report JSON path (default: stdout)");
  detect_cmd->add_option("--cad-out", detect_cad_out, "Write the CAD curve as CSV");
  detect_cmd->add_option("--labels-out", detect_labels_out, "Write per-subsequence labels");

  // profile
  CommonFlags profile_flags;
  profile_flags.burn_in = 0;
  std::string profile_input, profile_out;
  auto* profile_cmd = app.add_subcommand("profile", "Write the matrix profile as CSV");
  add_common(profile_cmd, profile_flags, false);
  profile_cmd->add_option("--input", profile_input, "Input CSV")->required();
  profile_cmd->add_option("--out", profile_out, "Output CSV path (default: stdout)");

  // experiment
  CommonFlags exp_flags;
  SynthFlags exp_synth;
  std::vector<std::string> exp_inputs, exp_truths;
  std::size_t exp_synthetic = 0;
  std::string exp_out;
  auto* exp_cmd = app.add_subcommand("experiment", "Score detection over a batch of series");
  add_common(exp_cmd, exp_flags);
  add_synth(exp_cmd, exp_synth, false);
  exp_cmd->add_option("--input", exp_inputs, "Input CSV (repeatable)");
  exp_cmd->add_option("--truth", exp_truths,
                      "Raw anomaly start per input, or 'clean' (repeatable)");
  exp_cmd->add_option("--synthetic", exp_synthetic, "Also score N generated series");
  exp_cmd->add_option("--out", exp_out, "Write the table as CSV");

  // ablation
  CommonFlags abl_flags;
  SynthFlags abl_synth;
  std::vector<std::string> abl_inputs;
  std::size_t abl_synthetic = 0;
  std::string abl_out;
  auto* abl_cmd = app.add_subcommand("ablation", "FPR on clean series with and without epsilon");
  add_common(abl_cmd, abl_flags);
  add_synth(abl_cmd, abl_synth, false);
  abl_cmd->add_option("--input", abl_inputs, "Clean input CSV (repeatable)");
  abl_cmd->add_option("--synthetic", abl_synthetic, "Also use N generated clean series");
  abl_cmd->add_option("--out", abl_out, "Write the table as CSV");

  // sweep
  CommonFlags sweep_flags;
  SynthFlags sweep_synth;
  std::string sweep_input, sweep_truth, sweep_clean, sweep_grid = "0.1:0.8:0.1", sweep_out;
  bool sweep_synthetic = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "F1 and FPR across an epsilon grid");
  add_common(sweep_cmd, sweep_flags);
  add_synth(sweep_cmd, sweep_synth, false);
  sweep_cmd->add_option("--input", sweep_input, "Anomalous input CSV");
  sweep_cmd->add_option("--truth", sweep_truth, "Raw anomaly start of --input");
  sweep_cmd->add_option("--clean", sweep_clean, "Clean counterpart CSV");
  sweep_cmd->add_flag("--synthetic", sweep_synthetic, "Use a generated anomalous/clean pair");
  sweep_cmd->add_option("--eps-grid", sweep_grid, "start:stop:step")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path (default: stdout)");

  // synth
  SynthFlags synth_flags;
  std::string synth_out, synth_truth_out;
  bool synth_clean = false;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic two-regime series");
  add_synth(synth_cmd, synth_flags, true);
  synth_cmd->add_option("--out", synth_out, "Output CSV path")->required();
  synth_cmd->add_option("--truth-out", synth_truth_out,
                        "Ground truth JSON path (default: <out>.truth.json)");
  synth_cmd->add_flag("--clean", synth_clean, "Repeat regime A throughout");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mpseg");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*detect_cmd) {
      const auto cfg = detect_flags.config();
      const TimeSeries series = load_csv(detect_input, cfg.column);
      const PipelineResult result = run_pipeline(series, cfg);
      if (!detect_cad_out.empty()) emit(detect_cad_out, cad_csv(result.analysis), out);
      if (!detect_labels_out.empty()) {
        emit(detect_labels_out, labels_csv(result.report, result.analysis.offset), out);
      }
      emit(detect_out, report_to_json(result.report, result.analysis.offset, detect_labels_out),
           out);
      return 0;
    }

    if (*profile_cmd) {
      const auto cfg = profile_flags.config();
      const TimeSeries raw = load_csv(profile_input, cfg.column);
      const TimeSeries series = trim_burn_in(raw, cfg.burn_in, cfg.m - 1);
      const auto mp = compute_profile(cfg.engine, series, WindowConfig(cfg.m),
                                      ConvOptions{cfg.batch_rows, cfg.workers});
      emit(profile_out, profile_csv(mp), out);
      return 0;
    }

    if (*exp_cmd) {
      const auto cfg = exp_flags.config();
      auto batch = load_batch(exp_inputs, exp_truths, cfg.column);
      for (auto& ds : synthetic_batch(exp_synthetic, exp_synth, false)) {
        batch.datasets.push_back(std::move(ds));
      }
      ExperimentTable table = run_detection_experiment(batch.datasets, cfg);
      for (auto& [name, error] : batch.failures) {
        ExperimentRow row;
        row.name = name;
        row.error = error;
        table.rows.push_back(std::move(row));
      }
      out << experiment_text(table);
      if (!exp_out.empty()) emit(exp_out, experiment_csv(table), out);
      if (table.failures() > 0) {
        for (const auto& r : table.rows) {
          if (!r.ok()) err << r.name << ": " << r.error << '\n';
        }
        return 1;
      }
      return 0;
    }

    if (*abl_cmd) {
      const auto cfg = abl_flags.config();
      auto batch = load_batch(abl_inputs, {}, cfg.column);
      for (auto& ds : synthetic_batch(abl_synthetic, abl_synth, true)) {
        batch.datasets.push_back(std::move(ds));
      }
      auto rows = run_threshold_ablation(batch.datasets, cfg);
      for (auto& [name, error] : batch.failures) rows.push_back({name, error});
      out << ablation_text(rows);
      if (!abl_out.empty()) emit(abl_out, ablation_csv(rows), out);
      bool failed = false;
      for (const auto& r : rows) {
        if (!r.ok()) {
          err << r.name << ": " << r.error << '\n';
          failed = true;
        }
      }
      return failed ? 1 : 0;
    }

    if (*sweep_cmd) {
      const auto cfg = sweep_flags.config();
      const auto grid = parse_epsilon_grid(sweep_grid);
      Dataset anomalous{"", TimeSeries({0.0}), {}};
      Dataset clean = anomalous;
      if (sweep_synthetic) {
        anomalous = synthetic_batch(1, sweep_synth, false).front();
        clean = synthetic_batch(1, sweep_synth, true).front();
      } else {
        if (sweep_input.empty() || sweep_clean.empty()) {
          throw Error(ErrorCode::kConfiguration,
                      "sweep needs --input and --clean, or --synthetic");
        }
        anomalous = {sweep_input, load_csv(sweep_input, cfg.column), parse_truth(sweep_truth)};
        clean = {sweep_clean, load_csv(sweep_clean, cfg.column), {}};
      }
      emit(sweep_out, sweep_csv(run_epsilon_sweep(anomalous, clean, cfg, grid)), out);
      return 0;
    }

    if (*synth_cmd) {
      const auto spec = synth_flags.spec();
      const auto s = synth_clean ? generate_clean(spec) : generate_synthetic(spec);
      std::ostringstream csv;
      write_series_csv(csv, s.series);
      emit(synth_out, csv.str(), out);

      nlohmann::ordered_json truth;
      if (s.truth.anomaly_start) {
        truth["anomaly_start"] = *s.truth.anomaly_start;
      } else {
        truth["anomaly_start"] = nullptr;
      }
      truth["length"] = spec.total_length;
      truth["boundary_fraction"] = spec.boundary_fraction;
      truth["seed"] = spec.seed;
      truth["noise_std"] = spec.noise_std;
      truth["regime_a"] = {{"period", spec.regime_a.period},
                           {"waveform", to_string(spec.regime_a.waveform)},
                           {"amplitude", spec.regime_a.amplitude}};
      truth["regime_b"] = {{"period", spec.regime_b.period},
                           {"waveform", to_string(spec.regime_b.waveform)},
                           {"amplitude", spec.regime_b.amplitude}};
      const std::string truth_path =
          synth_truth_out.empty() ? synth_out + ".truth.json" : synth_truth_out;
      emit(truth_path, truth.dump(2) + "\n", out);
      return 0;
    }
  } catch (const Error& e) {
    err << "mpseg: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return 2;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace mpseg
