#pragma once

// Flat key = value configuration, CSV time series and snapshots, and the run
// manifest. Floats are written with 17 significant digits so every file
// round-trips exactly and identical runs produce identical bytes.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "axisym/diagnostics.hpp"
#include "axisym/dynamics.hpp"

namespace axisym {

/// Lines are `key = value`; blank lines and lines starting with '#' are
/// skipped. Unknown or repeated keys, malformed lines and out-of-range values
/// throw ConfigError prefixed with "line N:". Omitted keys keep the SimConfig
/// defaults.
SimConfig parse_config(const std::string& text);
SimConfig load_config(const std::filesystem::path& path);

/// Every resolved key, one per line, in parse_config syntax.
std::string config_to_text(const SimConfig& config);

/// Shortest form that round-trips: "%.17g".
std::string format_double(double x);

/// Streams records to a CSV file, flushing each row so a failing run leaves
/// every completed row on disk.
class TimeseriesWriter {
 public:
  explicit TimeseriesWriter(const std::filesystem::path& path);
  void append(const DiagnosticsRecord& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

void write_timeseries(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records);

/// A `# nr nz R H t` line, the header `i,j,r,z,Gamma,Omega`, then one row per
/// interior cell with i fastest.
void write_snapshot(const std::filesystem::path& path, const FlowState& state);
/// Throws FormatError on any shape or syntax mismatch; ghosts are refilled.
FlowState read_snapshot(const std::filesystem::path& path);

enum class TerminationReason { completed, blowup, solver_failure };
const char* termination_name(TerminationReason r);

struct RunManifest {
  SimConfig config;
  std::string version;
  std::string started;  // UTC, ISO 8601
  std::string finished;
  TerminationReason reason = TerminationReason::completed;
  std::string message;
};

/// Current UTC wall-clock time, ISO 8601 to the second.
std::string utc_timestamp();

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace axisym
