#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace trapexp::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInfeasible = 2, kSimulationFault = 3 };

struct CommandContext {
  RunConfig config;
  std::string format = "csv";                 // tabular outputs: csv | json
  std::optional<std::string> protocol_path;   // simulate/validate: use an existing protocol.json
  std::size_t snapshot_stride = 0;            // simulate: 0 = no snapshots.csv
  std::ostream* out = nullptr;                // human-readable progress
  std::ostream* err = nullptr;                // notices and the error JSON
};

int cmd_design(const CommandContext& ctx);
int cmd_bound(const CommandContext& ctx);
int cmd_simulate(const CommandContext& ctx);
int cmd_sweep(const CommandContext& ctx);
int cmd_validate(const CommandContext& ctx);

/// Runs a command, maps library errors onto exit codes and writes a one-line
/// JSON error document to ctx.err. Appends a timestamped line to run.log.
int run_command(const std::string& name, int (*command)(const CommandContext&), const CommandContext& ctx);

}  // namespace trapexp::cli
