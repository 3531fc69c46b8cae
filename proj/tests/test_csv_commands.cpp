/*
 * Copyright (C) 2026 The smartlearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "test_support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace smartlearn {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("smartlearn_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
  fs::path path_;
};

std::string slurp(const std::string& path) { return read_text_file(path); }

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) {
      kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  return kv;
}

/// Writes the sample scenario with a shortened horizon and returns its path.
std::string short_sample(const TempDir& dir, int days, int population = 1000) {
  auto j = nlohmann::json::parse(read_text_file(SMARTLEARN_SAMPLE_CONFIG));
  j["scenario"]["horizon_days"] = days;
  j["scenario"]["population"] = population;
  auto path = dir / "scenario.json";
  spit(path, j.dump(2));
  return path;
}

TEST(LoadCurveCsv, ExactFormat) {
  LoadCurve c{30, std::vector<double>(48, 0.0)};
  c.values[0] = 1234.56789;
  c.values[47] = 0.0005;
  std::ostringstream out;
  write_load_curve(out, c);
  const auto text = out.str();
  EXPECT_EQ(text.substr(0, 44), "bucket_start_min,mean_watts\n0,1234.568\n30,0.");
  EXPECT_NE(text.find("\n1410,0.001\n"), std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 49);
}

TEST(LoadCurveCsv, RoundTripWithinPrintedPrecision) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    LoadCurve c{30, std::vector<double>(48)};
    for (auto& v : c.values) {
      v = 1e6 * uniform01(rng);
    }
    std::stringstream io;
    write_load_curve(io, c);
    auto back = read_load_curve(io);
    ASSERT_EQ(back.bucket_minutes, 30);
    for (std::size_t i = 0; i < 48; ++i) {
      EXPECT_NEAR(back.values[i], c.values[i], 5e-4);
    }
  }
}

TEST(LoadCurveCsv, RejectsBadInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_load_curve(in);
  };
  EXPECT_THROW(parse(""), CsvError);
  EXPECT_THROW(parse("minute,watts\n0,1\n"), CsvError);
  EXPECT_THROW(parse("bucket_start_min,mean_watts\n0,1\n30,2\n60,x\n"), CsvError);
  EXPECT_THROW(parse("bucket_start_min,mean_watts\n0,1\n60,2\n"), CsvError);
  EXPECT_THROW(parse("bucket_start_min,mean_watts\n0,1\n720,-2\n"), CsvError);
  EXPECT_THROW(parse("bucket_start_min,mean_watts\n0,1\n480,2\n960,3\n1440,4\n1920,5\n"), CsvError);
  // CRLF is tolerated on input.
  auto c = parse("bucket_start_min,mean_watts\r\n0,1.5\r\n720,2.5\r\n");
  EXPECT_EQ(c.bucket_minutes, 720);
  EXPECT_EQ(c.values, (std::vector<double>{1.5, 2.5}));
}

TEST(AdoptionCsv, RoundTrip) {
  std::vector<AdoptionCounts> days{{10, 0, 0}, {0, 7, 3}, {0, 2, 8}};
  std::stringstream io;
  write_adoption(io, days);
  EXPECT_EQ(io.str(), "day,uninfluenced,inexperienced,experienced\n0,10,0,0\n1,0,7,3\n2,0,2,8\n");
  EXPECT_EQ(read_adoption(io), days);
}

TEST(EventsCsv, RoundTripsEngineLog) {
  auto scenario = test::must_validate(test::small_document());
  auto out = run(scenario, {std::nullopt, true});
  ASSERT_FALSE(out.events.empty());
  std::stringstream io;
  write_events(io, out.events, scenario.appliances());
  EXPECT_EQ(read_events(io, scenario.appliances()), out.events);
}

TEST(CmdRun, WritesParseableFilesAndManifest) {
  TempDir dir;
  auto config = short_sample(dir, 3, 200);
  RunArgs args;
  args.config_path = config;
  args.out_dir = dir / "out";
  args.events = true;
  args.seed = 5;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(args, out, err), exit_code::ok) << err.str();
  EXPECT_EQ(key_values(out.str())["seed"], "5");

  auto manifest = nlohmann::json::parse(slurp(dir / "out/manifest.json"));
  EXPECT_EQ(manifest["seed"].get<std::uint64_t>(), 5u);
  EXPECT_EQ(manifest["config"]["seed"].get<std::uint64_t>(), 5u);
  EXPECT_EQ(manifest["engine_version"], engine_version);
  EXPECT_EQ(manifest["scenario"], config);
  ASSERT_EQ(manifest["files"].size(), 3u);
  auto scenario = test::must_validate(*parse_scenario_json(slurp(config)).document);
  for (const auto& name : manifest["files"]) {
    auto path = (fs::path(args.out_dir) / name.get<std::string>()).string();
    ASSERT_GT(fs::file_size(path), 0u) << path;
    std::ifstream in(path, std::ios::binary);
    if (name == "loadcurve.csv") {
      EXPECT_EQ(read_load_curve(in).size(), 48u);
    } else if (name == "adoption.csv") {
      auto days = read_adoption(in);
      ASSERT_EQ(days.size(), 3u);
      for (const auto& d : days) {
        EXPECT_EQ(d.total(), 200);
      }
    } else {
      EXPECT_EQ(name, "events.csv");
      EXPECT_FALSE(read_events(in, scenario.appliances()).empty());
    }
  }
}

TEST(CmdRun, ByteIdenticalRepeats) {
  TempDir dir;
  auto config = short_sample(dir, 2, 300);
  std::ostringstream out1, out2, err;
  RunArgs args{config, 42, dir / "a", true, std::nullopt, std::nullopt};
  ASSERT_EQ(cmd_run(args, out1, err), 0);
  args.out_dir = dir / "b";
  ASSERT_EQ(cmd_run(args, out2, err), 0);
  for (const char* f : {"loadcurve.csv", "adoption.csv", "events.csv"}) {
    EXPECT_EQ(slurp(dir / (std::string("a/") + f)), slurp(dir / (std::string("b/") + f))) << f;
  }
  auto kv1 = key_values(out1.str()), kv2 = key_values(out2.str());
  kv1.erase("output_dir");
  kv2.erase("output_dir");
  EXPECT_EQ(kv1, kv2);
}

TEST(CmdRun, ExperiencedFractionOverride) {
  TempDir dir;
  auto config = short_sample(dir, 1, 100);
  RunArgs args{config, std::nullopt, dir / "out", false, std::nullopt, 0.9};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(args, out, err), 0) << err.str();
  EXPECT_EQ(key_values(out.str())["final_experienced"], "90");
  auto manifest = nlohmann::json::parse(slurp(dir / "out/manifest.json"));
  EXPECT_DOUBLE_EQ(manifest["config"]["initial_experienced_fraction"].get<double>(), 0.9);
}

TEST(CmdRun, SampleScenarioReachesExperienced) {
  TempDir dir;
  RunArgs args{SMARTLEARN_SAMPLE_CONFIG, std::nullopt, dir / "out", false, std::nullopt, std::nullopt};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(args, out, err), 0) << err.str();
  std::ifstream in(dir / "out/adoption.csv");
  auto days = read_adoption(in);
  ASSERT_EQ(days.size(), 30u);
  EXPECT_GT(days.back().experienced, 0);
}

TEST(CmdRun, ValidationFailureExitsTwo) {
  TempDir dir;
  auto j = nlohmann::json::parse(read_text_file(SMARTLEARN_SAMPLE_CONFIG));
  j["scenario"]["archetype_mix"][1]["fraction"] = 0.5;
  j["appliances"][0]["usage_profile"] = {0.1, 0.2};
  spit(dir / "bad.json", j.dump());
  RunArgs args{dir / "bad.json", std::nullopt, dir / "out", false, std::nullopt, std::nullopt};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(args, out, err), exit_code::invalid_input);
  const auto report = err.str();
  EXPECT_NE(report.find("MixNotNormalized"), std::string::npos);
  EXPECT_NE(report.find("BadProfileLength"), std::string::npos);
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 2);
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(CmdRun, IoFailuresExitOne) {
  TempDir dir;
  std::ostringstream out, err;
  RunArgs missing{dir / "nope.json", std::nullopt, dir / "out", false, std::nullopt, std::nullopt};
  EXPECT_EQ(cmd_run(missing, out, err), exit_code::io_failure);
  auto config = short_sample(dir, 1, 50);
  spit(dir / "blocker", "x");
  RunArgs blocked{config, std::nullopt, dir / "blocker/out", false, std::nullopt, std::nullopt};
  EXPECT_EQ(cmd_run(blocked, out, err), exit_code::io_failure);
}

TEST(CmdRun, HourlyTicksCannotFillHalfHourBuckets) {
  TempDir dir;
  auto j = nlohmann::json::parse(read_text_file(SMARTLEARN_SAMPLE_CONFIG));
  j["scenario"]["tick_minutes"] = 60;
  j["scenario"]["horizon_days"] = 1;
  spit(dir / "hourly.json", j.dump());
  RunArgs args{dir / "hourly.json", std::nullopt, dir / "out", false, std::nullopt, std::nullopt};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(args, out, err), exit_code::invalid_input);
  EXPECT_NE(err.str().find("BadBucket"), std::string::npos);
}

class CmdCompare : public ::testing::Test {
protected:
  void SetUp() override {
    Rng rng(9);
    base_.values.resize(48);
    for (auto& v : base_.values) {
      v = 1000.0 + 1000.0 * uniform01(rng);
    }
    base_.values[37] = 9000.0;
    std::ostringstream b;
    write_load_curve(b, base_);
    spit(dir_ / "base.csv", b.str());
  }

  std::pair<int, std::map<std::string, std::string>> compare(const std::string& treated,
                                                             TimeWindow w = {TimeOfDay::hm(17, 0), TimeOfDay::hm(20, 0)}) {
    std::ostringstream out, err;
    int rc = cmd_compare({dir_ / "base.csv", treated, w}, out, err);
    return {rc, key_values(out.str())};
  }

  TempDir dir_;
  LoadCurve base_;
};

TEST_F(CmdCompare, SelfComparison) {
  auto [rc, kv] = compare(dir_ / "base.csv");
  EXPECT_EQ(rc, 0);
  EXPECT_EQ(kv["correlation"], "1.000000");
  EXPECT_EQ(kv["peak_reduction"], "0.000000");
  EXPECT_EQ(kv["base_peak_bucket"], "18:30");
  EXPECT_EQ(kv["base_peak_watts"], "9000.000");
  EXPECT_EQ(kv["window"], "17:00-20:00");
}

TEST_F(CmdCompare, ScaledTreatment) {
  // Values with at most 3 decimals so the 0.8 scaling survives printing exactly.
  for (auto& v : base_.values) {
    v = std::round(v);
  }
  std::ostringstream b, t;
  write_load_curve(b, base_);
  spit(dir_ / "base.csv", b.str());
  auto treated = base_;
  for (auto& v : treated.values) {
    v *= 0.8;
  }
  write_load_curve(t, treated);
  spit(dir_ / "treated.csv", t.str());
  auto [rc, kv] = compare(dir_ / "treated.csv");
  EXPECT_EQ(rc, 0);
  EXPECT_EQ(kv["peak_reduction"], "0.200000");
  EXPECT_EQ(kv["correlation"], "1.000000");
  EXPECT_EQ(kv["treated_peak_watts"], "7200.000");
}

TEST_F(CmdCompare, LengthMismatchAndGarbageExitTwo) {
  LoadCurve hourly{60, std::vector<double>(24, 5.0)};
  hourly.values[3] = 7.0;
  std::ostringstream h;
  write_load_curve(h, hourly);
  spit(dir_ / "hourly.csv", h.str());
  EXPECT_EQ(compare(dir_ / "hourly.csv").first, exit_code::invalid_input);
  spit(dir_ / "junk.csv", "hello\n");
  EXPECT_EQ(compare(dir_ / "junk.csv").first, exit_code::invalid_input);
  EXPECT_EQ(compare(dir_ / "missing.csv").first, exit_code::io_failure);
}

TEST(CmdNetworkStats, SampleNetwork) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_network_stats({SMARTLEARN_SAMPLE_CONFIG, std::nullopt}, out, err), 0) << err.str();
  auto lines = std::vector<std::string>{};
  std::istringstream in(out.str());
  for (std::string l; std::getline(in, l);) {
    lines.push_back(l);
  }
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "nodes,edges,mean_degree,clustering,mean_path_length");
  EXPECT_EQ(lines[1].substr(0, 20), "1000,2000,4.000000,0");
  auto fields = detail::split(lines[1]);
  ASSERT_EQ(fields.size(), 5u);
  EXPECT_GT(std::stod(std::string(fields[3])), 0.3);
  EXPECT_GT(std::stod(std::string(fields[4])), 1.0);
  EXPECT_LT(std::stod(std::string(fields[4])), 20.0);
}

TEST(CmdNetworkStats, LatticeAndOddDegree) {
  TempDir dir;
  auto j = nlohmann::json::parse(read_text_file(SMARTLEARN_SAMPLE_CONFIG));
  j["scenario"]["network_rewire_beta"] = 0.0;
  spit(dir / "lattice.json", j.dump());
  std::ostringstream out, err;
  ASSERT_EQ(cmd_network_stats({dir / "lattice.json", std::nullopt}, out, err), 0);
  EXPECT_NE(out.str().find(",0.500000,"), std::string::npos) << out.str();

  j["scenario"]["network_mean_degree_K"] = 3;
  spit(dir / "odd.json", j.dump());
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_network_stats({dir / "odd.json", std::nullopt}, out2, err2), exit_code::invalid_input);
  EXPECT_NE(err2.str().find("BadDegree"), std::string::npos);
}

TEST(CmdNetworkStats, MatchesRunNetwork) {
  auto scenario = test::must_validate(test::sample_document());
  auto pop = build_population(scenario, 42);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_network_stats({SMARTLEARN_SAMPLE_CONFIG, 42}, out, err), 0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", clustering_coefficient(pop.network));
  EXPECT_NE(out.str().find(buf), std::string::npos);
}

TEST(CmdValidate, ReportsSummaryOrErrors) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate(SMARTLEARN_SAMPLE_CONFIG, out, err), 0);
  EXPECT_EQ(out.str(), "valid: population=1000 archetypes=2 appliances=8 horizon_days=30\n");
  TempDir dir;
  spit(dir / "broken.json", "{\"scenario\": 1}");
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_validate(dir / "broken.json", out2, err2), exit_code::invalid_input);
  EXPECT_FALSE(err2.str().empty());
}

} // namespace
} // namespace smartlearn
