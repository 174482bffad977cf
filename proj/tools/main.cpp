// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli_app.hpp"

int main(int argc, char **argv) { return helinear::cli::run(argc, argv, std::cout, std::cerr); }
