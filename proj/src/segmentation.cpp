// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/segmentation.hpp"

#include <algorithm>
#include <string>

#include "mpseg/error.hpp"

namespace mpseg {

std::vector<std::int64_t> count_crossings(std::span<const Arc> arcs, std::size_t l) {
  const auto len = static_cast<std::int64_t>(l);
  std::vector<std::int64_t> delta(l + 1, 0);
  for (const Arc& arc : arcs) {
    if (arc.from < 0 || arc.from >= len || arc.to < 0 || arc.to >= len) {
      throw Error(ErrorCode::kMalformedProfile,
                  "arc (" + std::to_string(arc.from) + ", " + std::to_string(arc.to) +
                      ") leaves [0, " + std::to_string(l) + ")");
    }
    ++delta[static_cast<std::size_t>(std::min(arc.from, arc.to))];
    --delta[static_cast<std::size_t>(std::max(arc.from, arc.to))];
  }
  std::vector<std::int64_t> counts(l);
  std::int64_t running = 0;
  for (std::size_t t = 0; t < l; ++t) {
    running += delta[t];
    counts[t] = running;
  }
  return counts;
}

std::vector<std::int64_t> arc_counts(std::span<const std::int64_t> indices, std::size_t l) {
  if (indices.size() != l) {
    throw Error(ErrorCode::kDimension, "index vector length " +
                                           std::to_string(indices.size()) +
                                           " does not match l = " + std::to_string(l));
  }
  std::vector<Arc> arcs(l);
  const auto len = static_cast<std::int64_t>(l);
  for (std::size_t i = 0; i < l; ++i) {
    const auto self = static_cast<std::int64_t>(i);
    const std::int64_t j = indices[i];
    if (j < 0 || j >= len || j == self) {
      throw Error(ErrorCode::kMalformedProfile,
                  "profile index " + std::to_string(j) + " at position " +
                      std::to_string(i) + " is out of range or a self match");
    }
    arcs[i] = {self, j};
  }
  return count_crossings(arcs, l);
}

std::vector<double> idealized_arc_count(std::size_t l) {
  if (l < 2) {
    throw Error(ErrorCode::kInvalidWindowLength, "idealized arc count needs l >= 2");
  }
  std::vector<double> iac(l);
  const auto len = static_cast<double>(l);
  for (std::size_t i = 0; i < l; ++i) {
    const auto x = static_cast<double>(i);
    iac[i] = 2.0 * x * (len - x) / len;
  }
  return iac;
}

std::vector<double> corrected_arc_density(std::span<const std::int64_t> raw_counts,
                                          std::span<const double> idealized,
                                          std::size_t edge_guard,
                                          CadDenominator denominator) {
  if (raw_counts.size() != idealized.size()) {
    throw Error(ErrorCode::kDimension, "arc count and idealized count lengths differ");
  }
  if (edge_guard < 1) {
    throw Error(ErrorCode::kConfiguration, "edge guard must be at least 1");
  }
  const std::size_t l = raw_counts.size();
  std::vector<double> cad(l);
  for (std::size_t i = 0; i < l; ++i) {
    const bool near_edge = i < edge_guard || l - i <= edge_guard;
    if (near_edge || idealized[i] <= 0.0) {
      cad[i] = 1.0;
    } else {
      cad[i] = std::min(static_cast<double>(raw_counts[i]) / idealized[i], 1.0);
    }
  }

  double peak = 0.0;
  if (denominator == CadDenominator::kCorrected) {
    for (double v : cad) peak = std::max(peak, v);
  } else {
    for (std::int64_t c : raw_counts) peak = std::max(peak, static_cast<double>(c));
  }
  if (peak <= 0.0) {
    std::fill(cad.begin(), cad.end(), 1.0);
    return cad;
  }
  for (double& v : cad) v = std::clamp(v / peak, 0.0, 1.0);
  return cad;
}

ArcDensity arc_density(std::span<const std::int64_t> indices, std::size_t edge_guard,
                       CadDenominator denominator) {
  ArcDensity out;
  out.raw_counts = arc_counts(indices, indices.size());
  out.idealized = idealized_arc_count(indices.size());
  out.corrected = corrected_arc_density(out.raw_counts, out.idealized, edge_guard, denominator);
  return out;
}

}  // namespace mpseg
