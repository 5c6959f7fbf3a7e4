// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace friedman::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, io_error = 3 };

//! Entry point of the friedman tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace friedman::cli
