// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpseg/core.hpp"

namespace mpseg {

// CSV column chosen by header name or by 0-based position.
using ColumnSelector = std::variant<std::string, std::size_t>;

// Parses "3" as a position and anything else as a header name.
ColumnSelector parse_column_selector(const std::string& text);

// One sample per row from the selected column. The first row is treated as
// a header when its cell in that column is not a number. Ingestion errors
// name the 1-based line of the offending cell.
TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column);
TimeSeries parse_csv(std::istream& in, const ColumnSelector& column,
                     const std::string& source = "<stream>");

// Drops burn_in samples from each end. Requires n > 2 * burn_in + min_remaining.
TimeSeries trim_burn_in(const TimeSeries& series, std::size_t burn_in,
                        std::size_t min_remaining = 0);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

void write_series_csv(std::ostream& out, const TimeSeries& series,
                      const std::string& header = "x");

}  // namespace mpseg
