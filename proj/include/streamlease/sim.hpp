#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamlease/cost.hpp"
#include "streamlease/model.hpp"
#include "streamlease/solver.hpp"

namespace streamlease {

/// Per-region workload of one time slice. Regions absent from the slice are
/// treated as inert for that slice.
struct TraceSlice {
  std::int64_t slice_index = 0;
  std::vector<SourceBundle> bundles;

  bool operator==(const TraceSlice&) const = default;
};

enum class Strategy {
  Top,          // every bundle at its most preferred site
  Centralized,  // everything at the configured centers
  Optimal,      // exact service migration
  Online,       // greedy service migration
  Dedicated,    // single dedicated site, the cost benchmark
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

/// One strategy's outcome on one slice. Lease figures are kept both packed
/// (the realized bill) and per-bundle (the solver's cost model).
struct StrategyRecord {
  Strategy strategy = Strategy::Top;
  bool feasible = false;
  Money lease_cost;        // packed per-site
  Money per_bundle_lease;  // no instance sharing across bundles
  Money total_cost;
  double p_global = 0.0;
  double latency_ms = 0.0;
  ServedBy served_by;
};

struct SliceReport {
  std::int64_t slice_index = 0;
  std::vector<StrategyRecord> records;
};

struct RunOptions {
  std::vector<Strategy> strategies;
  std::vector<SiteId> centers;        // required when Centralized is selected
  std::optional<Strategy> benchmark;  // Dedicated switches to the CDS-derived budget
  double latency_scale_ms = 100.0;    // latency proxy = scale / preference
  SolverLimits limits;
};

struct TraceRun {
  std::vector<SliceReport> reports;
  Money budget;  // the per-slice budget the run was held to
};

/// The base scenario with one slice's bundles swapped in. Regions without a
/// row in the slice become inert.
Scenario slice_scenario(const Scenario& base, const TraceSlice& slice);

/// Replays the trace slice by slice, solving every selected strategy
/// independently per slice. Infeasible slices are recorded, never fatal.
/// With a Dedicated benchmark the per-slice budget becomes the peak
/// dedicated-server cost of the whole trace.
TraceRun run_trace(const Scenario& base, const std::vector<TraceSlice>& trace,
                   const RunOptions& options);

/// Demand-weighted mean latency of a placement, with latency modelled as
/// scale_ms / preference. Zero total demand yields 0.
double latency_proxy(const Scenario& s, const ServedBy& served, double scale_ms);

/// Same, but with measured latencies; throws when a pair is missing.
double latency_proxy(const Scenario& s, const ServedBy& served,
                     const std::map<std::pair<RegionId, SiteId>, double>& latency_table_ms);

/// Daily workload shape of one region: a sinusoid between trough and peak
/// whose maximum sits at fraction `peak_frac` of the day.
struct RegionPattern {
  RegionId region;
  double peak_frac = 0.0;
  int stream_trough = 0;
  int stream_peak = 0;
  double demand_trough = 0.0;
  double demand_peak = 0.0;

  bool operator==(const RegionPattern&) const = default;
};

struct TraceGenSpec {
  int slices_per_day = 24;
  int days = 1;
  double noise = 0.0;  // uniform per-sample jitter as a fraction of the amplitude
  std::vector<RegionPattern> regions;

  bool operator==(const TraceGenSpec&) const = default;
};

/// Deterministic synthetic trace: same spec and seed, same slices.
std::vector<TraceSlice> generate_diurnal_trace(const TraceGenSpec& spec, std::uint64_t seed);

/// Per-strategy aggregates over a run, relative to a benchmark strategy.
struct StrategySummary {
  Strategy strategy = Strategy::Top;
  double mean_cost_ratio = 0.0;          // lease cost vs benchmark, mean over slices
  double peak_cost_ratio = 0.0;
  double mean_p_global = 0.0;
  double mean_latency_reduction = 0.0;   // (benchmark - strategy) / benchmark
  std::int64_t infeasible_slices = 0;
};

std::vector<StrategySummary> summarize(const std::vector<SliceReport>& reports,
                                       Strategy benchmark);

}  // namespace streamlease
