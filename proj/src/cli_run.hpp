#pragma once

// Subcommand drivers for the casimir-oqs tool.  Each writes its report or
// CSV table (configuration echo first, then a header row, then data rows)
// to the stream and returns the process exit code: 0 on success, 3 when
// any point failed numerically (the partial table carries the error
// column), 4 when a verification check failed.  Configuration problems are
// thrown as ConfigError before any output starts.

#include <iosfwd>

#include "cli_config.hpp"

namespace casimir_cli {

int run_force(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out, int jobs);
int run_epsilon(const RunConfig& cfg, std::ostream& out);
int run_chi(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace casimir_cli
