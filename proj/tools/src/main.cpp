// Copyright 2026 The packconv Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "packconv_cli/commands.hpp"

int main(int argc, char** argv) { return packconv::cli::run(argc, argv, std::cout, std::cerr); }
