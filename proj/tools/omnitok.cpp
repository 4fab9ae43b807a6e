// Copyright 2026 The omnitok Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "omnitok/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return omnitok::cli::run(args, std::cin, std::cout, std::cerr);
}
