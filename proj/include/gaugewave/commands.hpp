#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaugewave::cli {

// Exit codes shared by every command.
enum Exit { ok = 0, config_error = 1, blow_up = 2, failure = 3 };

// Runs the configured evolution; writes run.csv / run.jsonl / snapshots/step_NNNNNNNN/ as configured.
int cmd_evolve(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

// Suites: identities, gauge, bounds, weights, crossval. Writes check_<suite>.json to the output
// directory (and to `out`) whether or not it passes.
int cmd_check(const std::string& suite, const std::filesystem::path& config, std::ostream& out, std::ostream& err);

// Norm report per (s, b) for one snapshot; b needs at least eight snapshots of one field at
// uniformly spaced times, which are then treated as a space-time block.
int cmd_norms(const std::vector<std::filesystem::path>& snapshots, const std::vector<double>& s_list,
              const std::vector<double>& b_list, std::ostream& out, std::ostream& err);

}  // namespace gaugewave::cli
