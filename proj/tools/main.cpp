#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "streamlease/cli.hpp"

namespace {

std::vector<streamlease::Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<streamlease::Strategy> out;
  for (const auto& name : names) {
    const auto s = streamlease::strategy_from_name(name);
    if (!s) {
      throw CLI::ValidationError("--strategies",
                                 "unknown strategy '" + name +
                                     "' (expected TOP, CP, OM, OM-online or CDS)");
    }
    out.push_back(*s);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamlease: budget-constrained placement of live-stream ingest "
               "bundles across cloud sites"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string trace_path;
  std::string genspec_path;
  std::string out_dir = "out";
  std::string trace_out;  // gentrace writes to stdout when empty
  std::vector<std::string> strategy_names;
  std::vector<std::string> centers;
  std::string benchmark_name = "cds";
  std::uint64_t seed = 1;
  double latency_scale = 100.0;
  std::size_t enum_guard = 1'000'000;
  std::size_t dp_guard = 10'000'000;
  bool dump_graph = false;

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

  auto* solve = app.add_subcommand("solve", "solve a single scenario");
  solve->add_option("scenario", scenario_path, "scenario JSON file")->required();
  solve->add_option("--strategies", strategy_names, "strategies to run")
      ->delimiter(',')
      ->default_val(std::vector<std::string>{"TOP", "OM"});
  solve->add_option("--centers", centers, "center sites for the CP strategy")->delimiter(',');
  solve->add_option("--out", out_dir, "output directory")->capture_default_str();
  solve->add_option("--latency-scale", latency_scale, "ms of latency at preference 1.0");
  solve->add_option("--enum-guard", enum_guard, "candidate set enumeration cap");
  solve->add_option("--dp-guard", dp_guard, "knapsack DP cell cap");
  solve->add_flag("--dump-graph", dump_graph, "also write the migration graph");

  auto* simulate = app.add_subcommand("simulate", "replay a trace against a scenario");
  simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
  simulate->add_option("trace", trace_path, "trace CSV file")->required();
  simulate->add_option("--strategies", strategy_names, "strategies to run")
      ->delimiter(',')
      ->default_val(std::vector<std::string>{"TOP", "OM", "OM-online", "CDS"});
  simulate->add_option("--centers", centers, "center sites for the CP strategy")->delimiter(',');
  simulate->add_option("--benchmark", benchmark_name, "benchmark strategy: cds or top")
      ->check(CLI::IsMember({"cds", "top"}));
  simulate->add_option("--seed", seed, "reserved for reproducibility bookkeeping");
  simulate->add_option("--out", out_dir, "output directory")->capture_default_str();
  simulate->add_option("--latency-scale", latency_scale, "ms of latency at preference 1.0");
  simulate->add_option("--enum-guard", enum_guard, "candidate set enumeration cap");
  simulate->add_option("--dp-guard", dp_guard, "knapsack DP cell cap");

  auto* gentrace = app.add_subcommand("gentrace", "generate a synthetic diurnal trace");
  gentrace->add_option("genspec", genspec_path, "generator spec JSON file")->required();
  gentrace->add_option("--seed", seed, "random seed");
  gentrace->add_option("--out", trace_out, "output CSV file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      streamlease::load_scenario(scenario_path);
      std::cout << "scenario OK\n";
      return 0;
    }

    if (gentrace->parsed()) {
      const auto spec = streamlease::load_genspec(genspec_path);
      const auto trace = streamlease::generate_diurnal_trace(spec, seed);
      const std::string csv = streamlease::trace_csv(trace);
      if (trace_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(trace_out, std::ios::binary);
        if (!out) {
          throw std::runtime_error("cannot write " + trace_out);
        }
        out << csv;
      }
      return 0;
    }

    streamlease::RunConfig config;
    config.scenario_path = scenario_path;
    config.strategies = parse_strategies(strategy_names);
    config.centers = centers;
    config.out_dir = out_dir;
    config.seed = seed;
    config.latency_scale_ms = latency_scale;
    config.limits.max_candidate_sets = enum_guard;
    config.limits.max_dp_cells = dp_guard;
    config.dump_graph = dump_graph;
    if (simulate->parsed()) {
      config.trace_path = trace_path;
      config.benchmark = benchmark_name == "top" ? streamlease::Strategy::Top
                                                 : streamlease::Strategy::Dedicated;
    } else {
      config.benchmark = streamlease::Strategy::Top;  // summary relative to TOP
    }
    return streamlease::run(config);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
