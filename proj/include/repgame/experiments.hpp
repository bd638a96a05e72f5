#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace repgame {

struct CliOptions {
  std::string config_path;  // may be empty where a command has defaults
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

// Each command reads a strict config schema, runs, and writes its artifacts
// (CSV tables, matrices, JSON summaries) under out_dir.  Returns a process
// exit code.
int cmd_solve_pure(const CliOptions& opt);
int cmd_solve_mixed(const CliOptions& opt);
int cmd_ratio(const CliOptions& opt);
int cmd_logistic(const CliOptions& opt);
int cmd_shapes(const CliOptions& opt);
int cmd_curve(const CliOptions& opt);
int cmd_selftest(const CliOptions& opt);

}  // namespace repgame
