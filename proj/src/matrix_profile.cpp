// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/matrix_profile.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "mpseg/error.hpp"

namespace mpseg {

namespace {

constexpr std::size_t kColumnTile = 256;

struct Best {
  double distance = std::numeric_limits<double>::infinity();
  std::int64_t index = -1;

  // Strict comparison: candidates are offered in ascending column order, so
  // ties resolve to the smallest index.
  void offer(double d, std::size_t j) {
    if (d < distance) {
      distance = d;
      index = static_cast<std::int64_t>(j);
    }
  }
};

bool masked(std::size_t i, std::size_t j, std::size_t zone) {
  return (i > j ? i - j : j - i) <= zone;
}

void check_profile_inputs(const TimeSeries& series, const WindowConfig& cfg) {
  const std::size_t l = cfg.profile_length(series);
  check_has_neighbors(l, cfg.exclusion_zone());
}

std::pair<long double, long double> mean_std(std::span<const double> w) {
  long double sum = 0.0L;
  for (double v : w) sum += v;
  const long double mean = sum / static_cast<long double>(w.size());
  long double ss = 0.0L;
  for (double v : w) {
    const long double d = v - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<long double>(w.size()))};
}

}  // namespace

void check_has_neighbors(std::size_t profile_length, std::size_t exclusion_zone) {
  // The middle row of a profile of length 2z + 1 already has every column
  // inside its band, so at least 2z + 2 subsequences are needed.
  if (profile_length <= 2 * exclusion_zone + 1) {
    throw Error(ErrorCode::kNoValidNeighbor,
                "profile length " + std::to_string(profile_length) +
                    " leaves no candidate outside exclusion zone " +
                    std::to_string(exclusion_zone));
  }
}

double znorm_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimension, "subsequence lengths differ: " +
                                           std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()));
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::kInvalidWindowLength,
                "z-normalized distance needs at least 2 samples");
  }
  const auto [mean_a, std_a] = mean_std(a);
  const auto [mean_b, std_b] = mean_std(b);
  long double sum = 0.0L;
  for (std::size_t p = 0; p < a.size(); ++p) {
    const long double za = std_a > 0.0L ? (a[p] - mean_a) / std_a : 0.0L;
    const long double zb = std_b > 0.0L ? (b[p] - mean_b) / std_b : 0.0L;
    sum += (za - zb) * (za - zb);
  }
  return static_cast<double>(std::sqrt(sum));
}

double distance_from_dot(long double qt, std::size_t m, long double mean_a,
                         long double std_a, long double mean_b, long double std_b) {
  const auto mm = static_cast<long double>(m);
  if (std_a == 0.0L || std_b == 0.0L) {
    return std_a == std_b ? 0.0 : static_cast<double>(std::sqrt(mm));
  }
  const long double corr = (qt - mm * mean_a * mean_b) / (mm * std_a * std_b);
  const long double radicand = std::clamp(2.0L * mm * (1.0L - corr), 0.0L, 4.0L * mm);
  return static_cast<double>(std::sqrt(radicand));
}

MatrixProfile brute_force_profile(const TimeSeries& series, const WindowConfig& cfg) {
  check_profile_inputs(series, cfg);
  const auto windows = sliding_window(series, cfg.m());
  const std::size_t l = windows.size();

  MatrixProfile mp;
  mp.distances.resize(l);
  mp.indices.resize(l);
  for (std::size_t i = 0; i < l; ++i) {
    Best best;
    for (std::size_t j = 0; j < l; ++j) {
      if (masked(i, j, cfg.exclusion_zone())) continue;
      best.offer(znorm_distance(windows[i], windows[j]), j);
    }
    mp.distances[i] = best.distance;
    mp.indices[i] = best.index;
  }
  return mp;
}

void for_each_stomp_row(
    std::span<const double> values, std::size_t m,
    const std::function<void(std::size_t, std::span<const long double>)>& visit) {
  if (m < 1 || m > values.size()) {
    throw Error(ErrorCode::kInvalidWindowLength, "invalid window length");
  }
  const std::size_t l = values.size() - m + 1;
  std::vector<long double> first(l);
  for (std::size_t j = 0; j < l; ++j) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < m; ++k) {
      acc += static_cast<long double>(values[k]) * values[j + k];
    }
    first[j] = acc;
  }
  std::vector<long double> qt = first;
  visit(0, qt);
  for (std::size_t i = 1; i < l; ++i) {
    const long double head = values[i - 1];
    const long double tail = values[i + m - 1];
    for (std::size_t j = l - 1; j >= 1; --j) {
      qt[j] = qt[j - 1] - head * values[j - 1] + tail * values[j + m - 1];
    }
    qt[0] = first[i];
    visit(i, qt);
  }
}

MatrixProfile stomp_profile(const TimeSeries& series, const WindowConfig& cfg) {
  check_profile_inputs(series, cfg);
  const std::size_t m = cfg.m();
  const auto stats = rolling_mean_std_ext(series.values(), m);
  const std::size_t l = stats.means.size();

  MatrixProfile mp;
  mp.distances.resize(l);
  mp.indices.resize(l);
  for_each_stomp_row(series.values(), m, [&](std::size_t i, std::span<const long double> qt) {
    Best best;
    for (std::size_t j = 0; j < l; ++j) {
      if (masked(i, j, cfg.exclusion_zone())) continue;
      best.offer(distance_from_dot(qt[j], m, stats.means[i], stats.stds[i],
                                   stats.means[j], stats.stds[j]),
                 j);
    }
    mp.distances[i] = best.distance;
    mp.indices[i] = best.index;
  });
  return mp;
}

namespace {

// Kernels [row_begin, row_end) against columns [col_begin, col_end).
// out has (row_end - row_begin) rows with a stride of `stride`. Every cell
// is a plain sum over k in ascending order, so values do not depend on the
// tile shape; four columns share each kernel load to keep the extended
// precision accumulators in registers.
void correlate_tile(std::span<const double> values, std::size_t m, std::size_t row_begin,
                    std::size_t row_end, std::size_t col_begin, std::size_t col_end,
                    long double* out, std::size_t stride) {
  const double* t = values.data();
  for (std::size_t r = row_begin; r < row_end; ++r) {
    const double* kernel = t + r;
    long double* row = out + (r - row_begin) * stride;
    std::size_t j = col_begin;
    for (; j + 4 <= col_end; j += 4) {
      long double a0 = 0.0L, a1 = 0.0L, a2 = 0.0L, a3 = 0.0L;
      const double* s = t + j;
      for (std::size_t k = 0; k < m; ++k) {
        const long double w = kernel[k];
        a0 += w * s[k];
        a1 += w * s[k + 1];
        a2 += w * s[k + 2];
        a3 += w * s[k + 3];
      }
      row[j - col_begin] = a0;
      row[j - col_begin + 1] = a1;
      row[j - col_begin + 2] = a2;
      row[j - col_begin + 3] = a3;
    }
    for (; j < col_end; ++j) {
      long double acc = 0.0L;
      for (std::size_t k = 0; k < m; ++k) acc += static_cast<long double>(kernel[k]) * t[j + k];
      row[j - col_begin] = acc;
    }
  }
}

}  // namespace

void batched_sliding_dot(std::span<const double> values, std::size_t m,
                         std::size_t row_begin, std::size_t row_end,
                         std::span<long double> out) {
  if (m < 1 || m > values.size()) {
    throw Error(ErrorCode::kInvalidWindowLength, "invalid window length");
  }
  const std::size_t l = values.size() - m + 1;
  if (row_begin > row_end || row_end > l) {
    throw Error(ErrorCode::kDimension, "kernel row range out of bounds");
  }
  if (out.size() != (row_end - row_begin) * l) {
    throw Error(ErrorCode::kDimension, "output buffer has the wrong size");
  }
  correlate_tile(values, m, row_begin, row_end, 0, l, out.data(), l);
}

MatrixProfile conv_profile(const TimeSeries& series, const WindowConfig& cfg,
                           const ConvOptions& options) {
  if (options.batch_rows < 1) {
    throw Error(ErrorCode::kConfiguration, "batch size must be at least 1");
  }
  if (options.workers < 1) {
    throw Error(ErrorCode::kConfiguration, "worker count must be at least 1");
  }
  check_profile_inputs(series, cfg);
  const std::size_t m = cfg.m();
  const std::size_t zone = cfg.exclusion_zone();
  const auto values = series.values();
  const auto stats = rolling_mean_std_ext(values, m);
  const std::size_t l = stats.means.size();

  MatrixProfile mp;
  mp.distances.resize(l);
  mp.indices.resize(l);

  const std::size_t batch = std::min(options.batch_rows, l);
  const std::size_t num_batches = (l + batch - 1) / batch;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    std::vector<long double> qt(batch * kColumnTile);
    std::vector<Best> best(batch);
    for (std::size_t b = next++; b < num_batches; b = next++) {
      const std::size_t row_begin = b * batch;
      const std::size_t row_end = std::min(l, row_begin + batch);
      const std::size_t rows = row_end - row_begin;
      std::fill_n(best.begin(), rows, Best{});
      for (std::size_t col = 0; col < l; col += kColumnTile) {
        const std::size_t col_end = std::min(l, col + kColumnTile);
        correlate_tile(values, m, row_begin, row_end, col, col_end, qt.data(), kColumnTile);
        for (std::size_t r = 0; r < rows; ++r) {
          const std::size_t i = row_begin + r;
          const long double* row = qt.data() + r * kColumnTile;
          for (std::size_t j = col; j < col_end; ++j) {
            if (masked(i, j, zone)) continue;
            best[r].offer(distance_from_dot(row[j - col], m, stats.means[i], stats.stds[i],
                                            stats.means[j], stats.stds[j]),
                          j);
          }
        }
      }
      for (std::size_t r = 0; r < rows; ++r) {
        mp.distances[row_begin + r] = best[r].distance;
        mp.indices[row_begin + r] = best[r].index;
      }
    }
  };

  const std::size_t workers = std::min(options.workers, num_batches);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return mp;
}

MatrixProfile compute_profile(ProfileEngine engine, const TimeSeries& series,
                              const WindowConfig& cfg, const ConvOptions& options) {
  switch (engine) {
    case ProfileEngine::kBrute: return brute_force_profile(series, cfg);
    case ProfileEngine::kStomp: return stomp_profile(series, cfg);
    case ProfileEngine::kConv: return conv_profile(series, cfg, options);
  }
  throw Error(ErrorCode::kConfiguration, "unknown profile engine");
}

}  // namespace mpseg
