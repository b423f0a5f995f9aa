#include <unistd.h>

#include <cstdlib>
#include <random>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "streamlease/cli.hpp"
#include "support.hpp"

using namespace streamlease;
using streamlease::testing::make_s0;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("streamlease-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

}  // namespace

TEST_CASE("scenario documents round-trip") {
  const Scenario s0 = make_s0();
  TempDir dir;
  const std::string path = dir.file("s0.json", write_scenario(s0));
  CHECK(load_scenario(path) == s0);

  std::mt19937_64 rng(91);
  for (int i = 0; i < 25; ++i) {
    const Scenario s = streamlease::testing::random_scenario(rng, i % 2 == 0);
    const std::string p = dir.file("rt.json", write_scenario(s));
    CHECK(load_scenario(p) == s);
  }
}

TEST_CASE("loading rejects invalid scenarios with named violations") {
  TempDir dir;

  Scenario missing_pref = make_s0();
  missing_pref.preferences["A1"].erase("s2");
  const std::string p1 = dir.file("bad1.json", write_scenario(missing_pref));
  CHECK_THROWS_WITH_AS(load_scenario(p1),
                       doctest::Contains("preference (A1, s2): missing entry"),
                       std::runtime_error);

  std::string negative = write_scenario(make_s0());
  const auto pos = negative.find("\"0.50\"");
  REQUIRE(pos != std::string::npos);
  negative.replace(pos, 6, "\"-0.50\"");
  const std::string p2 = dir.file("bad2.json", negative);
  CHECK_THROWS_WITH_AS(load_scenario(p2), doctest::Contains("instance_rate must be >= 0"),
                       std::runtime_error);

  std::string three_digits = write_scenario(make_s0());
  const auto pos3 = three_digits.find("\"0.50\"");
  three_digits.replace(pos3, 6, "\"0.505\"");
  const std::string p3 = dir.file("bad3.json", three_digits);
  CHECK_THROWS_WITH_AS(load_scenario(p3), doctest::Contains("two fractional digits"),
                       std::runtime_error);

  const std::string p4 = dir.file("bad4.json", "{ not json");
  CHECK_THROWS_AS(load_scenario(p4), std::runtime_error);

  CHECK_THROWS_WITH_AS(load_scenario((dir.path / "absent.json").string()),
                       doctest::Contains("cannot open"), std::runtime_error);
}

TEST_CASE("money fields must be strings") {
  TempDir dir;
  std::string doc = write_scenario(make_s0());
  const std::string needle = "\"budget\": \"10.00\"";
  const auto pos = doc.find(needle);
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, needle.size(), "\"budget\": 10.0");
  const std::string path = dir.file("numeric.json", doc);
  CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("decimal string"),
                       std::runtime_error);
}

TEST_CASE("trace parsing groups rows into slices") {
  const std::string csv =
      "slice_index,region,stream_count,demand\n"
      "0,A1,2,100\n"
      "0,A2,1,50\n"
      "0,A3,3,80\n";
  const auto trace = parse_trace(csv);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].slice_index == 0);
  REQUIRE(trace[0].bundles.size() == 3);
  CHECK(trace[0].bundles[1] == SourceBundle{"A2", 1, 50.0});
}

TEST_CASE("trace parsing rejects bad input with row numbers") {
  CHECK_THROWS_WITH_AS(parse_trace("slice_index,region,stream_count,demand\n"
                                   "1,A1,2,100\n"
                                   "0,A2,1,50\n"),
                       doctest::Contains("row 3"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_trace("slice_index,region,stream_count,demand\n"
                                   "0,A1,x,100\n"),
                       doctest::Contains("row 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_trace("bad,header\n"), doctest::Contains("row 1"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_trace("slice_index,region,stream_count,demand\n"
                                   "0,A1,1,10\n"
                                   "0,A1,2,20\n"),
                       doctest::Contains("duplicate region"), std::runtime_error);
  CHECK(parse_trace("").empty());
  CHECK(parse_trace("slice_index,region,stream_count,demand\n").empty());
}

TEST_CASE("trace loading checks regions against the scenario") {
  TempDir dir;
  const std::string path = dir.file("t.csv",
                                    "slice_index,region,stream_count,demand\n"
                                    "0,A9,1,10\n");
  CHECK_THROWS_WITH_AS(load_trace(path, make_s0()), doctest::Contains("unknown region A9"),
                       std::runtime_error);
}

TEST_CASE("trace CSV writer round-trips through the parser") {
  const auto trace = generate_diurnal_trace(
      TraceGenSpec{6, 1, 0.3, {{"A1", 0.2, 0, 9, 5, 250}, {"A2", 0.7, 1, 6, 5, 150}}}, 17);
  const auto parsed = parse_trace(trace_csv(trace));
  REQUIRE(parsed.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(parsed[i].slice_index == trace[i].slice_index);
    REQUIRE(parsed[i].bundles.size() == trace[i].bundles.size());
    for (std::size_t j = 0; j < trace[i].bundles.size(); ++j) {
      CHECK(parsed[i].bundles[j].region == trace[i].bundles[j].region);
      CHECK(parsed[i].bundles[j].stream_count == trace[i].bundles[j].stream_count);
      CHECK(parsed[i].bundles[j].demand ==
            doctest::Approx(trace[i].bundles[j].demand).epsilon(1e-4));
    }
  }
}

TEST_CASE("solve run writes the golden report") {
  TempDir dir;
  const std::string scenario = dir.file("s0.json", write_scenario(make_s0()));

  RunConfig config;
  config.scenario_path = scenario;
  config.strategies = {Strategy::Top, Strategy::Optimal};
  config.benchmark = Strategy::Top;
  config.out_dir = (dir.path / "out").string();
  REQUIRE(run(config) == 0);

  const std::string report = dir.read("out/report.csv");
  CHECK(report.find("slice_index,strategy,lease_cost,total_cost,p_global,latency_proxy_ms,"
                    "feasible\n") == 0);
  CHECK(report.find("0,TOP,4.90,7.40,1.00000,") != std::string::npos);
  CHECK(report.find("0,OM,4.00,6.50,0.93939,") != std::string::npos);

  const std::string assignments = dir.read("out/assignments.csv");
  CHECK(assignments.find("0,OM,A1,s1\n") != std::string::npos);
  CHECK(assignments.find("0,OM,A3,s2\n") != std::string::npos);

  const std::string summary = dir.read("out/summary.csv");
  CHECK(summary.find("TOP,1.00000,") != std::string::npos);
  CHECK(summary.find("OM,0.81633,") != std::string::npos);  // 4.00 / 4.90

  RunConfig again = config;
  again.out_dir = (dir.path / "out2").string();
  REQUIRE(run(again) == 0);
  CHECK(dir.read("out2/report.csv") == report);
}

TEST_CASE("simulate run writes a summary for the benchmark") {
  TempDir dir;
  const std::string scenario = dir.file("s0.json", write_scenario(make_s0()));
  const std::string trace = dir.file("t.csv",
                                     "slice_index,region,stream_count,demand\n"
                                     "0,A1,2,100\n"
                                     "0,A2,1,50\n"
                                     "0,A3,3,80\n"
                                     "1,A1,1,60\n"
                                     "1,A2,2,70\n"
                                     "1,A3,1,40\n");

  RunConfig config;
  config.scenario_path = scenario;
  config.trace_path = trace;
  config.strategies = {Strategy::Top, Strategy::Optimal};
  config.benchmark = Strategy::Dedicated;
  config.out_dir = (dir.path / "out").string();
  REQUIRE(run(config) == 0);

  const std::string summary = dir.read("out/summary.csv");
  CHECK(summary.find("strategy,mean_cost_ratio,peak_cost_ratio,mean_p_global,"
                     "mean_latency_reduction,infeasible_slices\n") == 0);
  CHECK(summary.find("CDS,1.00000,") != std::string::npos);

  const std::string report = dir.read("out/report.csv");
  CHECK(report.find("1,TOP,") != std::string::npos);
  CHECK(report.find("0,CDS,") != std::string::npos);
}

TEST_CASE("unwritable output directory fails the run") {
  TempDir dir;
  const std::string scenario = dir.file("s0.json", write_scenario(make_s0()));
  const std::string blocker = dir.file("blocker", "not a directory");

  RunConfig config;
  config.scenario_path = scenario;
  config.out_dir = blocker + "/out";
  CHECK(run(config) != 0);
}

TEST_CASE("gentrace without --out writes to stdout only") {
  TempDir dir;
  const std::string genspec = dir.file("g.json", R"({
    "slices_per_day": 4,
    "regions": [
      {"region": "AS", "peak_frac": 0.5, "stream_trough": 1, "stream_peak": 3,
       "demand_trough": 10, "demand_peak": 30}
    ]
  })");
  const std::string cmd = "cd " + dir.path.string() + " && " + CLI_BIN + " gentrace " +
                          genspec + " --seed 1 > stdout.csv 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(dir.read("stdout.csv").find("slice_index,region,stream_count,demand\n") == 0);
  CHECK_FALSE(std::filesystem::exists(dir.path / "out"));
}

TEST_CASE("unknown strategy names are a usage error") {
  TempDir dir;
  const std::string scenario = dir.file("s0.json", write_scenario(make_s0()));
  const std::string cmd = std::string(CLI_BIN) + " solve " + scenario +
                          " --strategies TOP,XX --out " + (dir.path / "out").string() +
                          " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) != 0);

  const std::string ok = std::string(CLI_BIN) + " validate " + scenario + " >/dev/null 2>&1";
  CHECK(std::system(ok.c_str()) == 0);
}

TEST_CASE("genspec files load") {
  TempDir dir;
  const std::string path = dir.file("g.json", R"({
    "slices_per_day": 12,
    "days": 2,
    "noise": 0.1,
    "regions": [
      {"region": "AS", "peak_frac": 0.3, "stream_trough": 1, "stream_peak": 9,
       "demand_trough": 10, "demand_peak": 90}
    ]
  })");
  const TraceGenSpec spec = load_genspec(path);
  CHECK(spec.slices_per_day == 12);
  CHECK(spec.days == 2);
  REQUIRE(spec.regions.size() == 1);
  CHECK(spec.regions[0].region == "AS");
  CHECK(generate_diurnal_trace(spec, 2).size() == 24);
}
