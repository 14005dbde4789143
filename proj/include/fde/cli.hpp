#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fde/config.hpp"

namespace fde {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_invalid = 2 };

/// One line of the verify suite.
struct PropertyResult {
  std::string name;
  double value = 0.0;      // measured residual / ratio
  double tolerance = 0.0;  // pass iff value <= tolerance (or the stated test)
  bool passed = false;
};

/// Operator identities, root identities, stationarity, explicit-solution
/// residuals and transform round trips for the configured (n, m, l).
std::vector<PropertyResult> run_verify_suite(const RunConfig& cfg);
std::string verify_csv(const std::vector<PropertyResult>& results);

// Subcommands. Each writes into cfg.out_dir and a short log to `log`.
// Return 0 on success, 1 on tolerance/certificate failure.
int cmd_rates(const RunConfig& cfg, std::ostream& log);
int cmd_barriers(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_transform(const RunConfig& cfg, std::ostream& log);
int cmd_table(const RunConfig& cfg, std::ostream& log);

const std::vector<std::string>& command_names();

/// Validates cfg, dispatches, and maps exceptions to exit codes:
/// DomainError / ConfigError -> 2, any other error -> 1.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log);

}  // namespace fde
