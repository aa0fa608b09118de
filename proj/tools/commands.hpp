#pragma once

#include <functional>

#include "common.hpp"

namespace hypflow::cli {

// Adds every subcommand; the one selected on the command line stores its body in `action`.
void register_commands(CLI::App& app, Run& run, std::function<Json()>& action);

}  // namespace hypflow::cli
