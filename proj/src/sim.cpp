#include "streamlease/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "streamlease/graph.hpp"

namespace streamlease {

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Top:
      return "TOP";
    case Strategy::Centralized:
      return "CP";
    case Strategy::Optimal:
      return "OM";
    case Strategy::Online:
      return "OM-online";
    case Strategy::Dedicated:
      return "CDS";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  for (Strategy s : {Strategy::Top, Strategy::Centralized, Strategy::Optimal, Strategy::Online,
                     Strategy::Dedicated}) {
    if (name == strategy_name(s)) {
      return s;
    }
  }
  return std::nullopt;
}

Scenario slice_scenario(const Scenario& base, const TraceSlice& slice) {
  Scenario s = base;
  s.bundles.clear();
  for (const auto& region : base.regions) {
    const SourceBundle* row = nullptr;
    for (const auto& b : slice.bundles) {
      if (b.region == region.id) {
        row = &b;
        break;
      }
    }
    s.bundles.push_back(row != nullptr ? *row : SourceBundle{region.id, 0, 0.0});
  }
  return s;
}

namespace {

StrategyRecord record_for(const Scenario& s, Strategy strategy, const Assignment& a,
                          double latency_scale_ms) {
  StrategyRecord r;
  r.strategy = strategy;
  r.feasible = a.breakdown.total <= s.budget;
  r.lease_cost = a.breakdown.lease;
  r.per_bundle_lease = per_bundle_lease_cost(s, a.served_by);
  r.total_cost = a.breakdown.total;
  r.p_global = global_relative_preference(s, a.served_by);
  r.latency_ms = latency_proxy(s, a.served_by, latency_scale_ms);
  r.served_by = a.served_by;
  return r;
}

StrategyRecord infeasible_record(Strategy strategy) {
  StrategyRecord r;
  r.strategy = strategy;
  r.feasible = false;
  return r;
}

std::vector<Strategy> normalized_strategies(const RunOptions& options) {
  std::vector<Strategy> order{Strategy::Top, Strategy::Centralized, Strategy::Optimal,
                              Strategy::Online, Strategy::Dedicated};
  std::vector<Strategy> out;
  for (Strategy s : order) {
    const bool selected = std::find(options.strategies.begin(), options.strategies.end(), s) !=
                          options.strategies.end();
    if (selected || (options.benchmark && *options.benchmark == s)) {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

TraceRun run_trace(const Scenario& base, const std::vector<TraceSlice>& trace,
                   const RunOptions& options) {
  const std::vector<Strategy> strategies = normalized_strategies(options);
  const bool wants_centralized =
      std::find(strategies.begin(), strategies.end(), Strategy::Centralized) != strategies.end();
  if (wants_centralized && options.centers.empty()) {
    throw std::invalid_argument("the CP strategy needs at least one center");
  }
  const bool wants_dedicated =
      std::find(strategies.begin(), strategies.end(), Strategy::Dedicated) != strategies.end();

  std::vector<Scenario> slices;
  slices.reserve(trace.size());
  for (const auto& slice : trace) {
    slices.push_back(slice_scenario(base, slice));
  }

  TraceRun run;
  run.budget = base.budget;
  SiteId dedicated_site;
  if ((wants_dedicated || (options.benchmark && *options.benchmark == Strategy::Dedicated)) &&
      !slices.empty()) {
    dedicated_site = cds_center(slices);
    if (options.benchmark && *options.benchmark == Strategy::Dedicated) {
      run.budget = cds_benchmark_cost(slices, dedicated_site);
    }
  }

  for (std::size_t i = 0; i < trace.size(); ++i) {
    Scenario sc = slices[i];
    sc.budget = run.budget;

    SliceReport report;
    report.slice_index = trace[i].slice_index;
    for (Strategy strategy : strategies) {
      switch (strategy) {
        case Strategy::Top:
          report.records.push_back(
              record_for(sc, strategy, assign_top_preferred(sc), options.latency_scale_ms));
          break;
        case Strategy::Centralized:
          report.records.push_back(record_for(
              sc, strategy, assign_centralized(sc, options.centers), options.latency_scale_ms));
          break;
        case Strategy::Dedicated:
          report.records.push_back(
              record_for(sc, strategy, assign_centralized(sc, {dedicated_site}),
                         options.latency_scale_ms));
          break;
        case Strategy::Optimal:
        case Strategy::Online: {
          if (lease_budget(sc) <= Money{}) {
            report.records.push_back(infeasible_record(strategy));
            break;
          }
          const MigrationGraph g = build_migration_graph(sc);
          const MigrationSolution sol = strategy == Strategy::Optimal
                                            ? optimal_service_migration(sc, g, options.limits)
                                            : online_service_migration(sc, g, options.limits);
          if (!sol.feasible) {
            report.records.push_back(infeasible_record(strategy));
            break;
          }
          report.records.push_back(
              record_for(sc, strategy, apply_migration(sc, sol), options.latency_scale_ms));
          break;
        }
      }
    }
    run.reports.push_back(std::move(report));
  }
  return run;
}

double latency_proxy(const Scenario& s, const ServedBy& served, double scale_ms) {
  double weighted = 0.0;
  double demand = 0.0;
  for (const auto& b : s.bundles) {
    if (b.inert() || b.demand == 0.0) {
      continue;
    }
    auto it = served.find(b.region);
    if (it == served.end()) {
      throw std::invalid_argument("bundle " + b.region + " is not assigned to any site");
    }
    weighted += b.demand * (scale_ms / s.preference(b.region, it->second));
    demand += b.demand;
  }
  if (demand == 0.0) {
    std::cerr << "warning: latency proxy undefined with zero total demand, reporting 0\n";
    return 0.0;
  }
  return weighted / demand;
}

double latency_proxy(const Scenario& s, const ServedBy& served,
                     const std::map<std::pair<RegionId, SiteId>, double>& latency_table_ms) {
  double weighted = 0.0;
  double demand = 0.0;
  for (const auto& b : s.bundles) {
    if (b.inert() || b.demand == 0.0) {
      continue;
    }
    auto it = served.find(b.region);
    if (it == served.end()) {
      throw std::invalid_argument("bundle " + b.region + " is not assigned to any site");
    }
    auto cell = latency_table_ms.find({b.region, it->second});
    if (cell == latency_table_ms.end()) {
      throw std::runtime_error("missing latency entry (" + b.region + ", " + it->second + ")");
    }
    weighted += b.demand * cell->second;
    demand += b.demand;
  }
  if (demand == 0.0) {
    std::cerr << "warning: latency proxy undefined with zero total demand, reporting 0\n";
    return 0.0;
  }
  return weighted / demand;
}

std::vector<TraceSlice> generate_diurnal_trace(const TraceGenSpec& spec, std::uint64_t seed) {
  if (spec.slices_per_day < 1) {
    throw std::invalid_argument("slices_per_day must be >= 1");
  }
  if (spec.days < 1) {
    throw std::invalid_argument("days must be >= 1");
  }
  if (spec.noise < 0.0) {
    throw std::invalid_argument("noise must be >= 0");
  }
  for (const auto& r : spec.regions) {
    if (r.stream_trough > r.stream_peak || r.demand_trough > r.demand_peak) {
      throw std::invalid_argument("region " + r.region + ": trough exceeds peak");
    }
    if (r.stream_trough < 0 || r.demand_trough < 0.0) {
      throw std::invalid_argument("region " + r.region + ": troughs must be >= 0");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);

  std::vector<TraceSlice> trace;
  const std::int64_t total = static_cast<std::int64_t>(spec.slices_per_day) * spec.days;
  for (std::int64_t t = 0; t < total; ++t) {
    TraceSlice slice;
    slice.slice_index = t;
    const double frac =
        static_cast<double>(t % spec.slices_per_day) / static_cast<double>(spec.slices_per_day);
    for (const auto& r : spec.regions) {
      const double phase = 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * (frac - r.peak_frac)));
      const double stream_amp = static_cast<double>(r.stream_peak - r.stream_trough);
      const double demand_amp = r.demand_peak - r.demand_trough;
      const double stream_noise = jitter(rng) * spec.noise * stream_amp;
      const double demand_noise = jitter(rng) * spec.noise * demand_amp;

      SourceBundle b;
      b.region = r.region;
      b.stream_count = static_cast<int>(std::max<std::int64_t>(
          0, std::llround(r.stream_trough + stream_amp * phase + stream_noise)));
      b.demand = std::max(0.0, r.demand_trough + demand_amp * phase + demand_noise);
      slice.bundles.push_back(std::move(b));
    }
    trace.push_back(std::move(slice));
  }
  return trace;
}

std::vector<StrategySummary> summarize(const std::vector<SliceReport>& reports,
                                       Strategy benchmark) {
  auto find_record = [](const SliceReport& report, Strategy s) -> const StrategyRecord* {
    for (const auto& r : report.records) {
      if (r.strategy == s) {
        return &r;
      }
    }
    return nullptr;
  };
  for (const auto& report : reports) {
    if (find_record(report, benchmark) == nullptr) {
      throw std::invalid_argument("benchmark strategy missing from slice " +
                                  std::to_string(report.slice_index));
    }
  }

  std::vector<Strategy> present;
  for (Strategy s : {Strategy::Top, Strategy::Centralized, Strategy::Optimal, Strategy::Online,
                     Strategy::Dedicated}) {
    for (const auto& report : reports) {
      if (find_record(report, s) != nullptr) {
        present.push_back(s);
        break;
      }
    }
  }

  std::vector<StrategySummary> out;
  for (Strategy s : present) {
    StrategySummary sum;
    sum.strategy = s;
    double ratio_total = 0.0;
    std::int64_t ratio_count = 0;
    double ratio_peak = 0.0;
    double pg_total = 0.0;
    std::int64_t pg_count = 0;
    double lat_total = 0.0;
    std::int64_t lat_count = 0;
    for (const auto& report : reports) {
      const StrategyRecord* mine = find_record(report, s);
      const StrategyRecord* bench = find_record(report, benchmark);
      if (mine == nullptr) {
        continue;
      }
      if (!mine->feasible) {
        ++sum.infeasible_slices;
      }
      if (mine->served_by.empty()) {
        continue;  // no assignment to aggregate (infeasible solver slice)
      }
      pg_total += mine->p_global;
      ++pg_count;
      if (bench->lease_cost.cents() > 0) {
        const double ratio = money_ratio(mine->lease_cost, bench->lease_cost);
        ratio_total += ratio;
        ratio_peak = std::max(ratio_peak, ratio);
        ++ratio_count;
      }
      if (bench->latency_ms > 0.0) {
        lat_total += (bench->latency_ms - mine->latency_ms) / bench->latency_ms;
        ++lat_count;
      }
    }
    sum.mean_cost_ratio = ratio_count > 0 ? ratio_total / static_cast<double>(ratio_count) : 0.0;
    sum.peak_cost_ratio = ratio_peak;
    sum.mean_p_global = pg_count > 0 ? pg_total / static_cast<double>(pg_count) : 0.0;
    sum.mean_latency_reduction =
        lat_count > 0 ? lat_total / static_cast<double>(lat_count) : 0.0;
    out.push_back(sum);
  }
  return out;
}

}  // namespace streamlease
