// Subcommand orchestration: config -> SI -> core library -> output files.
// Every run writes its primary table (csv or json), any secondary files,
// and a resolved_config.txt sidecar that reproduces the run when fed back.
#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"
#include "ionrot/table.hpp"

namespace ionrot::cli {

struct RunOptions {
  std::filesystem::path out_dir = "out";
  TableFormat format = TableFormat::Csv;
  int jobs = 1;
};

Table cmd_swap(const RawConfig& raw, const RunOptions& opt);
Table cmd_sweep(const RawConfig& raw, const RunOptions& opt);
Table cmd_design(const RawConfig& raw, const RunOptions& opt);
Table cmd_zigzag(const RawConfig& raw, const RunOptions& opt);
Table cmd_barrier(const RawConfig& raw, const RunOptions& opt);
Table cmd_lossbound(const RawConfig& raw, const RunOptions& opt);
Table cmd_threepoint(const RawConfig& raw, const RunOptions& opt);

// Dispatches by subcommand name; returns the process exit code
// (0 ok, 2 config error, 3 numerical failure).
int run_command(const std::string& name, const std::string& config_path, const RunOptions& opt);

}  // namespace ionrot::cli
