#pragma once

#include "sqz/config.hpp"

#include <iosfwd>
#include <string>

namespace sqz {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_computation = 2,
    exit_io = 3,
};

// Each command renders its complete output document (provenance header plus
// body) in the configured format. Library errors propagate as sqz::Error.
std::string cmd_spectrum(const RunConfig& config);
std::string cmd_evolve(const RunConfig& config);
std::string cmd_timescales(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);
std::string cmd_oracle(const RunConfig& config);

/// The timescale report as a JSON object (the body of cmd_timescales).
nlohmann::json timescales_report(const RunConfig& config);

/// Full command-line entry point. Output documents go to the configured path
/// (stdout for "-"); diagnostics go to `err`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace sqz
