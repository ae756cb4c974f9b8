#pragma once

// Front end for the few-distances tool: argument parsing into a RunConfig and
// command execution into CSV/JSON text. Kept in the library so tests can drive
// commands without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fewdist/form_sieve.hpp"
#include "fewdist/limits.hpp"

namespace fewdist::cli {

enum class Command { box, distances, sieve, ratio, verify, census, scaling };

enum class Format { csv, json };

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
  Command command = Command::box;
  std::int64_t k = 2;
  std::optional<std::int64_t> m;
  std::optional<std::uint64_t> n;
  std::optional<std::pair<std::int64_t, std::int64_t>> m_range;
  std::vector<std::uint64_t> xs;
  std::optional<std::pair<int, int>> decades;
  std::optional<QuadraticForm> form;
  Format format = Format::csv;
  Limits limits{.workers = 0};
  bool early_exit = true;
  std::string kernel = "auto";
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when the process should exit
  int exit_code = kExitOk;
};

// Parses argv; help and usage errors are written to `out` / `err`.
ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                std::ostream& err);

// Executes one command, writing the table to `out` and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fewdist::cli
