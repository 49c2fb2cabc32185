// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mpseg {

/// Ordered, finite, non-empty sequence of real samples.
///
/// Construction rejects empty input and any NaN/Inf sample; once built the
/// series is immutable. `source` is free-form metadata (file and column the
/// samples came from) and plays no part in any computation.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values, std::string source = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::string& source() const noexcept { return source_; }

  // Copy of samples [first, first + count).
  TimeSeries slice(std::size_t first, std::size_t count) const;

 private:
  std::vector<double> values_;
  std::string source_;
};

/// Subsequence length and trivial-match exclusion radius.
class WindowConfig {
 public:
  // Exclusion zone defaults to ceil(m / 4).
  explicit WindowConfig(std::size_t m);
  WindowConfig(std::size_t m, std::size_t exclusion_zone);

  std::size_t m() const noexcept { return m_; }
  std::size_t exclusion_zone() const noexcept { return exclusion_zone_; }

  // Number of subsequences, n - m + 1. Throws if m > n.
  std::size_t profile_length(const TimeSeries& series) const;
  // Throws unless 4 <= m <= n.
  void validate_for(const TimeSeries& series) const;

  static std::size_t default_exclusion_zone(std::size_t m) { return (m + 3) / 4; }

 private:
  std::size_t m_;
  std::size_t exclusion_zone_;
};

/// Population mean and standard deviation of every length-m window.
struct RollingStats {
  std::vector<double> means;
  std::vector<double> stds;
};

// All length-m windows with stride 1, window i starting at sample i. The
// spans point into `series` and share its lifetime.
std::vector<std::span<const double>> sliding_window(const TimeSeries& series,
                                                    std::size_t m);

// Single pass over the series with a sliding Welford update carried in
// extended precision. A window is re-evaluated directly when the rounding
// bound accumulated since the last exact evaluation grows large against its
// variance (a quiet stretch right after a loud one). Constant windows get a
// standard deviation of exactly 0.
RollingStats rolling_mean_std(const TimeSeries& series, std::size_t m);

// Same computation, extended precision output. The profile kernels use this
// to keep the dot-product cancellation in the widest type available.
struct RollingStatsExt {
  std::vector<long double> means;
  std::vector<long double> stds;
};
RollingStatsExt rolling_mean_std_ext(std::span<const double> values, std::size_t m);

}  // namespace mpseg
