#pragma once

#include <optional>
#include <string>
#include <vector>

#include "streamlease/model.hpp"
#include "streamlease/sim.hpp"

namespace streamlease {

/// Everything one solver or simulation run needs.
struct RunConfig {
  std::string scenario_path;
  std::optional<std::string> trace_path;
  std::vector<Strategy> strategies{Strategy::Top, Strategy::Optimal};
  std::vector<SiteId> centers;
  std::optional<Strategy> benchmark;  // simulate mode only
  std::string out_dir = "out";
  std::uint64_t seed = 0;  // reserved; strategies themselves are deterministic
  double latency_scale_ms = 100.0;
  SolverLimits limits;
  bool dump_graph = false;
};

/// Loads and fully validates a scenario document. Throws with every
/// violation listed when the document is well-formed but invalid.
Scenario load_scenario(const std::string& path);

/// Scenario document as JSON text; load_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& s);

/// Parses the trace CSV (header: slice_index,region,stream_count,demand).
/// Rows are grouped by slice index, which must be strictly increasing.
std::vector<TraceSlice> load_trace(const std::string& path);

/// Same, additionally rejecting regions unknown to the scenario.
std::vector<TraceSlice> load_trace(const std::string& path, const Scenario& s);

std::vector<TraceSlice> parse_trace(const std::string& text);

TraceGenSpec load_genspec(const std::string& path);

std::string report_csv(const std::vector<SliceReport>& reports);
std::string summary_csv(const std::vector<StrategySummary>& summaries);
std::string assignments_csv(const std::vector<SliceReport>& reports);
std::string trace_csv(const std::vector<TraceSlice>& trace);

/// Executes the configured run and writes report.csv, assignments.csv and,
/// when a benchmark is set, summary.csv into the output directory.
/// Returns a process exit status; failures are printed to stderr.
int run(const RunConfig& config);

}  // namespace streamlease
