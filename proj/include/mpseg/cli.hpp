// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpseg/detection.hpp"

namespace mpseg {

// Exit status: 0 success, 1 runtime or per-dataset failure, 2 bad flags or
// configuration.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The stable report document: anomaly_detected, onset_index_raw, min_cad,
// epsilon, m, burn_in, labels_path. The onset is shifted by offset into raw
// coordinates; an empty labels_path is written as null.
std::string report_to_json(const DetectionReport& report, std::size_t offset,
                           const std::string& labels_path);

}  // namespace mpseg
