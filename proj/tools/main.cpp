// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#include "commands.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv, argv + argc);
    return tvisi::cli::run(args, std::cout, std::cerr);
}
