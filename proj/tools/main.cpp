// Copyright 2026 The mpseg Authors
// SPDX-License-Identifier: Apache-2.0

#include "mpseg/cli.hpp"

int main(int argc, char** argv) { return mpseg::cli_main(argc, argv); }
