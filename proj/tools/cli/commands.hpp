// commands.hpp - Executes a resolved RunConfig and writes CSV/SVG artifacts

#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cli/run_config.hpp"

namespace dicke::cli {

struct RunResult {
    std::vector<std::filesystem::path> files;
    int numerical_failures{0}; // cells that failed with a NumericalError other than NotDiverging
};

// cfg must already be resolved. Progress and per-cell errors go to log.
RunResult run(const RunConfig& cfg, std::ostream& log);

// Full driver: parse flags and config file, resolve, run. Returns the process exit code
// (0 ok, 2 invalid configuration, 3 numerical failure).
int cli_main(int argc, char** argv);

} // namespace dicke::cli
