// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "mpseg/error.hpp"

namespace mpseg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

}  // namespace

ColumnSelector parse_column_selector(const std::string& text) {
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (!text.empty() && ec == std::errc() && ptr == text.data() + text.size()) return index;
  return text;
}

TimeSeries parse_csv(std::istream& in, const ColumnSelector& column,
                     const std::string& source) {
  std::vector<double> values;
  std::optional<std::size_t> col_index;
  if (const auto* idx = std::get_if<std::size_t>(&column)) col_index = *idx;

  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);

    if (first_row) {
      first_row = false;
      if (const auto* name = std::get_if<std::string>(&column)) {
        for (std::size_t c = 0; c < fields.size(); ++c) {
          if (fields[c] == *name) col_index = c;
        }
        if (!col_index) {
          throw Error(ErrorCode::kIngestion,
                      source + ": no column named '" + *name + "' in header");
        }
        continue;
      }
      if (*col_index >= fields.size()) {
        throw Error(ErrorCode::kIngestion, source + ": column " +
                                               std::to_string(*col_index) +
                                               " missing at line 1");
      }
      if (!parse_number(fields[*col_index])) continue;  // header row
    }

    if (*col_index >= fields.size()) {
      throw Error(ErrorCode::kIngestion, source + ": column " +
                                             std::to_string(*col_index) +
                                             " missing at row " + std::to_string(line_no));
    }
    const auto cell = fields[*col_index];
    const auto value = parse_number(cell);
    if (!value) {
      throw Error(ErrorCode::kIngestion, source + ": non-numeric value '" +
                                             std::string(cell) + "' at row " +
                                             std::to_string(line_no));
    }
    if (!std::isfinite(*value)) {
      throw Error(ErrorCode::kIngestion, source + ": non-finite value '" +
                                             std::string(cell) + "' at row " +
                                             std::to_string(line_no));
    }
    values.push_back(*value);
  }
  if (values.empty()) throw Error(ErrorCode::kIngestion, source + ": no samples");
  return TimeSeries(std::move(values), source);
}

TimeSeries load_csv(const std::filesystem::path& path, const ColumnSelector& column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIngestion, "cannot open " + path.string());
  return parse_csv(in, column, path.string());
}

TimeSeries trim_burn_in(const TimeSeries& series, std::size_t burn_in,
                        std::size_t min_remaining) {
  const std::size_t n = series.size();
  if (n <= 2 * burn_in + min_remaining) {
    throw Error(ErrorCode::kInvalidTrim,
                "series of length " + std::to_string(n) + " is too short to drop " +
                    std::to_string(burn_in) + " samples from each end");
  }
  if (burn_in == 0) return series;
  return series.slice(burn_in, n - 2 * burn_in);
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_series_csv(std::ostream& out, const TimeSeries& series, const std::string& header) {
  out << header << '\n';
  for (double v : series.values()) out << format_double(v) << '\n';
}

}  // namespace mpseg
