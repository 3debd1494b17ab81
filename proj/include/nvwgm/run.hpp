#ifndef NVWGM_RUN_HPP
#define NVWGM_RUN_HPP

#include <iosfwd>

#include "nvwgm/config.hpp"

namespace nvwgm::cli {

// Exit codes shared by run() and the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitThresholdFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

// Dispatches the configured scenario, writes the requested outputs under
// config.out_dir (tables as CSV, one summary.json), prints one line per
// check, and maps the outcome to an exit code. Identical configs produce
// byte-identical files.
int run(const RunConfig& config, std::ostream& out);

}  // namespace nvwgm::cli

#endif  // NVWGM_RUN_HPP
