// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/core.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "mpseg/error.hpp"

namespace mpseg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidWindowLength: return "invalid-window-length";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kNoValidNeighbor: return "no-valid-neighbor";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kMalformedProfile: return "malformed-profile";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kIngestion: return "ingestion";
    case ErrorCode::kInvalidTrim: return "invalid-trim";
  }
  return "unknown";
}

namespace {

void check_window(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) {
    throw Error(ErrorCode::kInvalidWindowLength,
                "window length " + std::to_string(m) + " is outside [1, " +
                    std::to_string(n) + "]");
  }
}

// Two-pass mean and sum of squared deviations of one window.
std::pair<long double, long double> window_moments(std::span<const double> w) {
  long double sum = 0.0L;
  for (double v : w) sum += v;
  const long double mean = sum / static_cast<long double>(w.size());
  long double m2 = 0.0L;
  for (double v : w) {
    const long double d = v - mean;
    m2 += d * d;
  }
  return {mean, m2};
}

// Re-evaluate a window directly once the accumulated rounding bound exceeds
// about 1e-12 of its m2 (long double epsilon is ~1e-19).
constexpr long double kMaxChurn = 1e7L;

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, std::string source)
    : values_(std::move(values)), source_(std::move(source)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kEmptyInput, "time series must contain at least one sample");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kIngestion,
                  "non-finite sample at index " + std::to_string(i));
    }
  }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
  if (first > values_.size() || count > values_.size() - first) {
    throw Error(ErrorCode::kDimension, "slice out of range");
  }
  return TimeSeries(std::vector<double>(values_.begin() + first,
                                        values_.begin() + first + count),
                    source_);
}

WindowConfig::WindowConfig(std::size_t m) : WindowConfig(m, default_exclusion_zone(m)) {}

WindowConfig::WindowConfig(std::size_t m, std::size_t exclusion_zone)
    : m_(m), exclusion_zone_(exclusion_zone) {
  if (m_ < 4) {
    throw Error(ErrorCode::kInvalidWindowLength,
                "subsequence length must be at least 4, got " + std::to_string(m_));
  }
}

std::size_t WindowConfig::profile_length(const TimeSeries& series) const {
  check_window(series.size(), m_);
  return series.size() - m_ + 1;
}

void WindowConfig::validate_for(const TimeSeries& series) const {
  check_window(series.size(), m_);
}

std::vector<std::span<const double>> sliding_window(const TimeSeries& series,
                                                    std::size_t m) {
  check_window(series.size(), m);
  const auto values = series.values();
  const std::size_t count = values.size() - m + 1;
  std::vector<std::span<const double>> windows;
  windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) windows.push_back(values.subspan(i, m));
  return windows;
}

RollingStatsExt rolling_mean_std_ext(std::span<const double> values, std::size_t m) {
  check_window(values.size(), m);
  const std::size_t count = values.size() - m + 1;
  const long double inv_m = 1.0L / static_cast<long double>(m);

  RollingStatsExt out;
  out.means.resize(count);
  out.stds.resize(count);

  // run = length of the run of identical samples ending at the current
  // window's last element; the window is constant iff run >= m.
  std::size_t run = 1;
  for (std::size_t k = 1; k < m; ++k) run = values[k] == values[k - 1] ? run + 1 : 1;

  auto [mean, m2] = window_moments(values.subspan(0, m));
  // Bound (in units of the rounding unit) on the error accumulated in m2
  // since the last exact evaluation.
  long double churn = 0.0L;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) {
      const std::size_t last = i + m - 1;
      run = values[last] == values[last - 1] ? run + 1 : 1;
      const long double x_out = values[i - 1];
      const long double x_in = values[last];
      const long double new_mean = mean + (x_in - x_out) * inv_m;
      const long double update = (x_in - x_out) * (x_in - new_mean + x_out - mean);
      m2 += update;
      churn += std::fabs(x_in - x_out) * (std::fabs(x_in) + std::fabs(x_out) + std::fabs(mean));
      mean = new_mean;
    }
    if (run >= m) {
      mean = values[i];
      m2 = 0.0L;
      churn = 0.0L;
    } else if (m2 <= 0.0L || churn > kMaxChurn * m2) {
      std::tie(mean, m2) = window_moments(values.subspan(i, m));
      churn = 0.0L;
    }
    long double var = m2 * inv_m;
    if (var < 0.0L && var > -1e-12L) var = 0.0L;
    out.means[i] = mean;
    out.stds[i] = var > 0.0L ? std::sqrt(var) : 0.0L;
  }
  return out;
}

RollingStats rolling_mean_std(const TimeSeries& series, std::size_t m) {
  const auto ext = rolling_mean_std_ext(series.values(), m);
  RollingStats out;
  out.means.assign(ext.means.begin(), ext.means.end());
  out.stds.assign(ext.stds.begin(), ext.stds.end());
  return out;
}

}  // namespace mpseg
