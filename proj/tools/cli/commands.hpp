#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cli/cli.hpp"

namespace conebranch::cli {

/// (name, one-line help) for every subcommand.
std::vector<std::pair<std::string, std::string>> command_list();

/// Runs one subcommand with a fully resolved configuration. Throws
/// UsageError for bad input and library errors unchanged.
int run_command(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace conebranch::cli
