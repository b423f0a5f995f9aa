#include "streamlease/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "streamlease/graph.hpp"

namespace streamlease {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

Money money_field(const json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw std::runtime_error("missing money field '" + key + "'");
  }
  if (!j.at(key).is_string()) {
    throw std::runtime_error("money field '" + key +
                             "' must be a decimal string such as \"1.50\"");
  }
  try {
    return Money::from_string(j.at(key).get<std::string>());
  } catch (const std::exception& e) {
    throw std::runtime_error("field '" + key + "': " + e.what());
  }
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", value);
  return buf;
}

Scenario scenario_from_json(const json& doc) {
  Scenario s;
  for (const auto& site : doc.at("sites")) {
    CloudSite c;
    c.id = site.at("id").get<std::string>();
    c.label = site.value("label", std::string{});
    c.pricing.instance_rate = money_field(site, "instance_rate");
    c.pricing.instance_capacity = site.at("instance_capacity").get<int>();
    c.pricing.egress_rate = money_field(site, "egress_rate");
    s.sites.push_back(std::move(c));
  }
  for (const auto& region : doc.at("regions")) {
    s.regions.push_back({region.at("id").get<std::string>(),
                         region.value("label", std::string{})});
  }
  for (const auto& bundle : doc.at("bundles")) {
    SourceBundle b;
    b.region = bundle.at("region").get<std::string>();
    b.stream_count = bundle.at("stream_count").get<int>();
    b.demand = bundle.at("demand").get<double>();
    s.bundles.push_back(std::move(b));
  }
  for (const auto& [region, row] : doc.at("preferences").items()) {
    for (const auto& [site, value] : row.items()) {
      s.preferences[region][site] = value.get<double>();
    }
  }
  const json& params = doc.at("params");
  s.top_k = params.at("k").get<int>();
  s.bootstrap_cost = money_field(params, "c0");
  s.cdn_unit_cost = money_field(params, "cdn_unit_cost");
  s.budget = money_field(params, "budget");
  s.cost_weight = params.at("p").get<double>();
  s.pref_weight = params.at("q").get<double>();
  return s;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  Scenario s;
  try {
    s = scenario_from_json(doc);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  const auto violations = validate_scenario(s);
  if (!violations.empty()) {
    std::string message = path + ": invalid scenario";
    for (const auto& v : violations) {
      message += "\n  " + v;
    }
    throw std::runtime_error(message);
  }
  return s;
}

std::string write_scenario(const Scenario& s) {
  json doc;
  doc["sites"] = json::array();
  for (const auto& site : s.sites) {
    json j;
    j["id"] = site.id;
    j["label"] = site.label;
    j["instance_rate"] = site.pricing.instance_rate.str();
    j["instance_capacity"] = site.pricing.instance_capacity;
    j["egress_rate"] = site.pricing.egress_rate.str();
    doc["sites"].push_back(std::move(j));
  }
  doc["regions"] = json::array();
  for (const auto& region : s.regions) {
    doc["regions"].push_back({{"id", region.id}, {"label", region.label}});
  }
  doc["bundles"] = json::array();
  for (const auto& b : s.bundles) {
    doc["bundles"].push_back(
        {{"region", b.region}, {"stream_count", b.stream_count}, {"demand", b.demand}});
  }
  doc["preferences"] = json::object();
  for (const auto& region : s.regions) {
    json row;
    for (const auto& site : s.sites) {
      auto it = s.preferences.find(region.id);
      if (it != s.preferences.end()) {
        auto cell = it->second.find(site.id);
        if (cell != it->second.end()) {
          row[site.id] = cell->second;
        }
      }
    }
    doc["preferences"][region.id] = std::move(row);
  }
  doc["params"] = {{"k", s.top_k},
                   {"c0", s.bootstrap_cost.str()},
                   {"cdn_unit_cost", s.cdn_unit_cost.str()},
                   {"budget", s.budget.str()},
                   {"p", s.cost_weight},
                   {"q", s.pref_weight}};
  return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.push_back("");
  }
  return cells;
}

}  // namespace

std::vector<TraceSlice> parse_trace(const std::string& text) {
  std::vector<TraceSlice> trace;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    ++row;
    if (row == 1) {
      if (line != "slice_index,region,stream_count,demand") {
        throw std::runtime_error("row 1: expected header slice_index,region,stream_count,demand");
      }
      continue;
    }
    if (line.empty()) {
      continue;
    }
    const auto cells = split_csv_row(line);
    if (cells.size() != 4) {
      throw std::runtime_error("row " + std::to_string(row) + ": expected 4 columns, got " +
                               std::to_string(cells.size()));
    }
    std::int64_t index;
    int streams;
    double demand;
    try {
      index = std::stoll(cells[0]);
      streams = std::stoi(cells[2]);
      demand = std::stod(cells[3]);
    } catch (const std::exception&) {
      throw std::runtime_error("row " + std::to_string(row) + ": malformed value");
    }
    if (index < 0) {
      throw std::runtime_error("row " + std::to_string(row) + ": slice_index must be >= 0");
    }
    if (streams < 0 || demand < 0.0) {
      throw std::runtime_error("row " + std::to_string(row) +
                               ": stream_count and demand must be >= 0");
    }
    if (trace.empty() || trace.back().slice_index != index) {
      if (!trace.empty() && index < trace.back().slice_index) {
        throw std::runtime_error("row " + std::to_string(row) +
                                 ": slice_index decreases (got " + cells[0] + " after " +
                                 std::to_string(trace.back().slice_index) + ")");
      }
      trace.push_back(TraceSlice{index, {}});
    }
    for (const auto& b : trace.back().bundles) {
      if (b.region == cells[1]) {
        throw std::runtime_error("row " + std::to_string(row) + ": duplicate region " +
                                 cells[1] + " in slice " + cells[0]);
      }
    }
    trace.back().bundles.push_back(SourceBundle{cells[1], streams, demand});
  }
  return trace;
}

std::vector<TraceSlice> load_trace(const std::string& path) {
  try {
    return parse_trace(read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<TraceSlice> load_trace(const std::string& path, const Scenario& s) {
  auto trace = load_trace(path);
  for (const auto& slice : trace) {
    for (const auto& b : slice.bundles) {
      bool known = false;
      for (const auto& region : s.regions) {
        if (region.id == b.region) {
          known = true;
          break;
        }
      }
      if (!known) {
        throw std::runtime_error(path + ": slice " + std::to_string(slice.slice_index) +
                                 ": unknown region " + b.region);
      }
    }
  }
  return trace;
}

TraceGenSpec load_genspec(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  TraceGenSpec spec;
  try {
    spec.slices_per_day = doc.at("slices_per_day").get<int>();
    spec.days = doc.value("days", 1);
    spec.noise = doc.value("noise", 0.0);
    for (const auto& r : doc.at("regions")) {
      RegionPattern p;
      p.region = r.at("region").get<std::string>();
      p.peak_frac = r.at("peak_frac").get<double>();
      p.stream_trough = r.at("stream_trough").get<int>();
      p.stream_peak = r.at("stream_peak").get<int>();
      p.demand_trough = r.at("demand_trough").get<double>();
      p.demand_peak = r.at("demand_peak").get<double>();
      spec.regions.push_back(std::move(p));
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return spec;
}

std::string report_csv(const std::vector<SliceReport>& reports) {
  std::ostringstream out;
  out << "slice_index,strategy,lease_cost,total_cost,p_global,latency_proxy_ms,feasible\n";
  for (const auto& report : reports) {
    for (const auto& r : report.records) {
      out << report.slice_index << ',' << strategy_name(r.strategy) << ',' << r.lease_cost.str()
          << ',' << r.total_cost.str() << ',' << format_real(r.p_global) << ','
          << format_real(r.latency_ms) << ',' << (r.feasible ? "true" : "false") << "\n";
    }
  }
  return out.str();
}

std::string summary_csv(const std::vector<StrategySummary>& summaries) {
  std::ostringstream out;
  out << "strategy,mean_cost_ratio,peak_cost_ratio,mean_p_global,"
         "mean_latency_reduction,infeasible_slices\n";
  for (const auto& s : summaries) {
    out << strategy_name(s.strategy) << ',' << format_real(s.mean_cost_ratio) << ','
        << format_real(s.peak_cost_ratio) << ',' << format_real(s.mean_p_global) << ','
        << format_real(s.mean_latency_reduction) << ',' << s.infeasible_slices << "\n";
  }
  return out.str();
}

std::string assignments_csv(const std::vector<SliceReport>& reports) {
  std::ostringstream out;
  out << "slice_index,strategy,region,site\n";
  for (const auto& report : reports) {
    for (const auto& r : report.records) {
      for (const auto& [region, site] : r.served_by) {
        out << report.slice_index << ',' << strategy_name(r.strategy) << ',' << region << ','
            << site << "\n";
      }
    }
  }
  return out.str();
}

std::string trace_csv(const std::vector<TraceSlice>& trace) {
  std::ostringstream out;
  out << "slice_index,region,stream_count,demand\n";
  for (const auto& slice : trace) {
    for (const auto& b : slice.bundles) {
      out << slice.slice_index << ',' << b.region << ',' << b.stream_count << ','
          << format_real(b.demand) << "\n";
    }
  }
  return out.str();
}

int run(const RunConfig& config) {
  try {
    const Scenario scenario = load_scenario(config.scenario_path);

    const bool wants_cp = std::find(config.strategies.begin(), config.strategies.end(),
                                    Strategy::Centralized) != config.strategies.end();
    if (wants_cp) {
      std::cerr << "note: CP is a non-conforming baseline and may place bundles outside "
                   "their top-k preference sets\n";
    }

    RunOptions options;
    options.strategies = config.strategies;
    options.centers = config.centers;
    options.benchmark = config.benchmark;
    options.latency_scale_ms = config.latency_scale_ms;
    options.limits = config.limits;

    std::vector<TraceSlice> trace;
    if (config.trace_path) {
      trace = load_trace(*config.trace_path, scenario);
    } else {
      trace.push_back(TraceSlice{0, scenario.bundles});
    }

    const TraceRun result = run_trace(scenario, trace, options);

    std::filesystem::path out_dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory " + config.out_dir + ": " +
                               ec.message());
    }

    write_file((out_dir / "report.csv").string(), report_csv(result.reports));
    write_file((out_dir / "assignments.csv").string(), assignments_csv(result.reports));
    if (config.benchmark) {
      write_file((out_dir / "summary.csv").string(),
                 summary_csv(summarize(result.reports, *config.benchmark)));
    }
    if (config.dump_graph) {
      const Scenario first =
          trace.empty() ? scenario : slice_scenario(scenario, trace.front());
      write_file((out_dir / "graph.txt").string(), dump_graph(build_migration_graph(first)));
    }

    std::cout << "wrote " << (out_dir / "report.csv").string() << " (" << result.reports.size()
              << (result.reports.size() == 1 ? " slice" : " slices") << ", budget "
              << result.budget.str() << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace streamlease
