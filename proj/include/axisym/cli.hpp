#pragma once

// Command-line surface: run, verify, constants, scaling-check, convergence and
// sweep. Exit codes: 0 success, 1 blow-up, 2 configuration error, 3 solver
// failure, 4 failed check.

#include <optional>
#include <string>
#include <vector>

#include "axisym/diagnostics.hpp"
#include "axisym/dynamics.hpp"
#include "axisym/io.hpp"

namespace axisym {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int blowup = 1;
inline constexpr int config = 2;
inline constexpr int solver = 3;
inline constexpr int check = 4;
}  // namespace exit_code

struct RunOutcome {
  TerminationReason reason = TerminationReason::completed;
  std::string message;
  std::vector<DiagnosticsRecord> records;
  std::optional<RunResult> result;  // set when the run completed
};

/// Runs `config` and writes timeseries.csv, snapshot_initial.csv,
/// snapshot_final.csv and manifest.txt under config.output_dir. Blow-up and
/// solver failure are reported through the outcome, with the last accepted
/// state in snapshot_abort.csv; the manifest is written on every path.
/// ConfigError propagates.
RunOutcome execute_run(const SimConfig& config);

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

/// Per-step slack 10 (dt + dr^2 + dz^2) with dt the largest step taken.
double step_slack(const SimConfig& config, const RunResult& result);

/// Every asserted margin of a completed run.
std::vector<CheckResult> verify_checks(const SimConfig& config, const RunOutcome& outcome);

int cli_main(int argc, char** argv);

}  // namespace axisym
