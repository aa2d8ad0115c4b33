#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace zener::cli {

struct RunOptions {
  bool dump_heff = false;
};

const std::vector<std::string>& command_names();

// Writes <dir>/<command>.csv and <command>.json. Returns 0, or 4 when a
// verified bound is reported violated. Errors propagate as exceptions.
int run(const std::string& command, const RunConfig& c, const RunOptions& opt,
        std::ostream& log);

// Exit code for an exception escaping run(): 2 config, 3 numerical, 1 other.
int exit_code_for(const std::exception& e);

}  // namespace zener::cli
