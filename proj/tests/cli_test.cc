// Copyright 2026 The BTER Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "bter/edgelist_io.h"
#include "json.hpp"
#include "test_support.h"

namespace bter {
namespace {

namespace fs = std::filesystem;
using testing::ReadFile;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Fixture(const std::string& name) {
  return (fs::path(BTER_TEST_DATA_DIR) / name).string();
}

// metric,value CSV as a map.
std::map<std::string, std::string> ReadMetrics(const fs::path& path) {
  std::map<std::string, std::string> rows;
  std::istringstream in(ReadFile(path));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "metric,value");
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return rows;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::MakeTempDir("bter_cli_test"); }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ErWithZeroProbabilityIsEmpty) {
  const auto r = Cli({"generate", "--model", "er", "--n", "10", "--p", "0", "--seed", "7",
                      "--out", Path("er.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadFile(Path("er.txt")), "");
  const auto manifest = nlohmann::json::parse(ReadFile(Path("er.txt.manifest.json")));
  EXPECT_EQ(manifest["nodes"], 10);
  EXPECT_EQ(manifest["config"]["seed"], 7);
}

TEST_F(CliTest, GenerateIsByteIdenticalAcrossRunsAndThreads) {
  const std::vector<std::string> files = {"g.txt", "g.txt.trace.csv", "g.txt.partition.csv",
                                          "g.txt.manifest.json"};
  std::vector<std::string> first;
  for (const char* threads : {"1", "4", "1"}) {
    const auto r = Cli({"generate", "--powerlaw", "3000,2,60", "--seed", "5", "--threads",
                        threads, "--out", Path("g.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> bytes;
    for (const auto& f : files) bytes.push_back(ReadFile(Path(f)));
    if (first.empty()) {
      first = bytes;
      EXPECT_FALSE(first[0].empty());
    } else {
      EXPECT_EQ(bytes, first) << "threads " << threads;
    }
  }
}

TEST_F(CliTest, GenerateReadsDegreesAndConfig) {
  WriteText(Path("deg.txt"), "3\n3\n3\n3\n1\n1\n");
  WriteText(Path("params.cfg"), "# parameters\nseed = 3\nrho = 1\neta = 0\n");
  const auto r = Cli({"generate", "--degrees", Path("deg.txt"), "--config", Path("params.cfg"),
                      "--out", Path("d.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  // Full block with rho = 1: nodes 2..5 form K4.
  const auto g = ReadSnapEdgeList(Path("d.txt")).graph;
  const auto manifest = nlohmann::json::parse(ReadFile(Path("d.txt.manifest.json")));
  EXPECT_EQ(manifest["config"]["seed"], 3);
  EXPECT_EQ(manifest["config"]["rho"], 1.0);
  EXPECT_EQ(manifest["inputs"].size(), 2u);
  EXPECT_GE(g.num_edges(), 6u);
}

TEST_F(CliTest, GenerateRejectsBadArguments) {
  EXPECT_EQ(Cli({"generate", "--powerlaw", "100,2,10", "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--seed", "1", "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--powerlaw", "100,2,10", "--degrees", Path("d"), "--seed", "1",
                 "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--powerlaw", "100,2,10", "--seed", "1", "--variant", "cubic",
                 "--rho", "0.9", "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--powerlaw", "100,2,10", "--seed", "1", "--q", "3", "--out",
                 Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--model", "cl", "--powerlaw", "100,2,10", "--seed", "1",
                 "--rho", "0.5", "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--model", "ws", "--seed", "1", "--out", Path("x")}).code, 2);
  EXPECT_EQ(Cli({"generate", "--degrees", Path("missing.txt"), "--seed", "1", "--out",
                 Path("x")}).code, 3);
  EXPECT_EQ(Cli({"generate", "--from-graph", Fixture("malformed.txt"), "--seed", "1", "--out",
                 Path("x")}).code, 3);
  EXPECT_FALSE(fs::exists(Path("x")));
}

TEST_F(CliTest, AnalyzeCompleteGraphFixture) {
  const auto r = Cli({"analyze", "--graph", Fixture("k4.txt"), "--top-k", "2", "--out-dir",
                      Path("k4")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto cc = ReadFile(Path("k4/cc.csv"));
  EXPECT_EQ(cc, "degree,mean_cc,node_count\nall,1,4\n3,1,4\n");
  EXPECT_EQ(ReadFile(Path("k4/degree.csv")), "degree,count\n3,4\n");
  auto graph = ReadMetrics(Path("k4/graph.csv"));
  EXPECT_EQ(graph["nodes"], "4");
  EXPECT_EQ(graph["edges"], "6");
  EXPECT_EQ(graph["self_loops_dropped"], "1");
  EXPECT_EQ(graph["duplicates_dropped"], "1");
  auto tri = ReadMetrics(Path("k4/triangles.csv"));
  EXPECT_EQ(tri["triangles"], "4");
  EXPECT_EQ(tri["wedges"], "12");
  EXPECT_EQ(tri["kk_holds"], "1");
  std::istringstream spectrum(ReadFile(Path("k4/spectrum.csv")));
  std::string header, row;
  std::getline(spectrum, header);
  std::getline(spectrum, row);
  EXPECT_EQ(header, "rank,eigenvalue,residual");
  EXPECT_NEAR(std::stod(row.substr(2)), 3.0, 1e-10);
}

TEST_F(CliTest, AnalyzeOnlyRequestedMetrics) {
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--metrics", "degree", "--out-dir",
                 Path("a")}).code, 0);
  EXPECT_TRUE(fs::exists(Path("a/degree.csv")));
  EXPECT_TRUE(fs::exists(Path("a/graph.csv")));
  EXPECT_FALSE(fs::exists(Path("a/cc.csv")));
  EXPECT_FALSE(fs::exists(Path("a/spectrum.csv")));
}

TEST_F(CliTest, AnalyzeVerbatimIdsKeepIsolatedNodes) {
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--nodes", "6", "--metrics",
                 "degree", "--out-dir", Path("a")}).code, 0);
  EXPECT_EQ(ReadFile(Path("a/degree.csv")), "degree,count\n0,2\n3,4\n");
  EXPECT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--nodes", "3", "--out-dir",
                 Path("b")}).code, 3);
}

TEST_F(CliTest, AnalyzeErLeadingEigenvalue) {
  ASSERT_EQ(Cli({"generate", "--model", "er", "--n", "100", "--p", "0.5", "--seed", "21",
                 "--out", Path("er.txt")}).code, 0);
  ASSERT_EQ(Cli({"analyze", "--graph", Path("er.txt"), "--metrics", "spectrum", "--top-k", "1",
                 "--out-dir", Path("a")}).code, 0);
  std::istringstream in(ReadFile(Path("a/spectrum.csv")));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  const double lambda = std::stod(line.substr(2));
  const auto g = ReadSnapEdgeList(Path("er.txt")).graph;
  EXPECT_NEAR(lambda, testing::DenseEigenvaluesDescending(g)[0], 1e-8 * lambda);
  EXPECT_NEAR(lambda, 50.0, 3 * std::sqrt(0.5));
}

TEST_F(CliTest, AnalyzeErrors) {
  EXPECT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--metrics", "degree,pagerank",
                 "--out-dir", Path("a")}).code, 2);
  EXPECT_EQ(Cli({"analyze", "--graph", Path("nope.txt"), "--out-dir", Path("a")}).code, 3);
  const auto bad = Cli({"analyze", "--graph", Fixture("malformed.txt"), "--out-dir", Path("a")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_EQ(Cli({"analyze", "--out-dir", Path("a")}).code, 2);
}

TEST_F(CliTest, NonConvergenceWritesPartialSpectrumAndExitsFour) {
  std::string path;
  for (int i = 0; i + 1 < 40; ++i) path += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  WriteText(Path("path.txt"), path);
  const auto r = Cli({"analyze", "--graph", Path("path.txt"), "--metrics", "spectrum", "--tol",
                      "1e-300", "--top-k", "2", "--out-dir", Path("a")});
  EXPECT_EQ(r.code, 4);
  EXPECT_TRUE(fs::exists(Path("a/spectrum.csv")));
  const auto manifest = nlohmann::json::parse(ReadFile(Path("a/manifest.json")));
  EXPECT_EQ(manifest["exit_code"], 4);
}

TEST_F(CliTest, CompareWithSelfIsZero) {
  ASSERT_EQ(Cli({"generate", "--powerlaw", "800,2,30", "--seed", "2", "--out", Path("g.txt")})
                .code, 0);
  ASSERT_EQ(Cli({"compare", "--graph", Path("g.txt"), "--graph", Path("g.txt"), "--top-k", "5",
                 "--out", Path("d.csv")}).code, 0);
  const auto rows = ReadMetrics(Path("d.csv"));
  EXPECT_EQ(rows.size(), 4u + 5u);
  for (const auto& [name, value] : rows) EXPECT_EQ(value, "0") << name;
}

TEST_F(CliTest, CompareBterAgainstClSeparatesClustering) {
  for (const char* model : {"bter", "cl"}) {
    ASSERT_EQ(Cli({"generate", "--model", model, "--powerlaw", "5000,2,80", "--seed", "4",
                   "--out", Path(std::string(model) + ".txt")}).code, 0);
  }
  ASSERT_EQ(Cli({"compare", "--graph", Path("bter.txt"), "--graph", Path("cl.txt"), "--metrics",
                 "degree,cc", "--cc-floor", "20", "--out", Path("d.csv")}).code, 0);
  auto rows = ReadMetrics(Path("d.csv"));
  const double tv = std::stod(rows["degree_tv"]);
  EXPECT_GT(std::stod(rows["global_cc_gap"]), tv);
  EXPECT_GT(std::stod(rows["cc_by_degree_max_gap"]), tv);
  EXPECT_EQ(rows.count("eigen_max_rel_gap"), 0u);
}

TEST_F(CliTest, CompareReportsMatchesCompareGraphs) {
  for (const char* model : {"bter", "cl"}) {
    const std::string name = model;
    ASSERT_EQ(Cli({"generate", "--model", model, "--powerlaw", "1500,2,40", "--seed", "9",
                   "--out", Path(name + ".txt")}).code, 0);
    ASSERT_EQ(Cli({"analyze", "--graph", Path(name + ".txt"), "--top-k", "4", "--out-dir",
                   Path(name)}).code, 0);
  }
  ASSERT_EQ(Cli({"compare", "--report", Path("bter"), "--report", Path("cl"), "--top-k", "4",
                 "--out", Path("from_reports.csv")}).code, 0);
  ASSERT_EQ(Cli({"compare", "--graph", Path("bter.txt"), "--graph", Path("cl.txt"), "--top-k",
                 "4", "--out", Path("from_graphs.csv")}).code, 0);
  EXPECT_EQ(ReadFile(Path("from_reports.csv")), ReadFile(Path("from_graphs.csv")));
}

TEST_F(CliTest, CompareErrors) {
  EXPECT_EQ(Cli({"compare", "--graph", Fixture("k4.txt"), "--out", Path("d.csv")}).code, 2);
  EXPECT_EQ(Cli({"compare", "--graph", Fixture("k4.txt"), "--report", dir_.string(), "--out",
                 Path("d.csv")}).code, 2);
  // Spectra of different lengths cannot be compared.
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--top-k", "2", "--out-dir",
                 Path("a")}).code, 0);
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--top-k", "3", "--out-dir",
                 Path("b")}).code, 0);
  EXPECT_EQ(Cli({"compare", "--report", Path("a"), "--report", Path("b"), "--out",
                 Path("d.csv")}).code, 2);
  // A report without cc.csv cannot supply the cc metric.
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--metrics", "degree", "--out-dir",
                 Path("c")}).code, 0);
  EXPECT_EQ(Cli({"compare", "--report", Path("a"), "--report", Path("c"), "--metrics",
                 "degree,cc", "--out", Path("d.csv")}).code, 3);
}

TEST_F(CliTest, AuditPredictsCommunityScale) {
  const auto r = Cli({"audit", "--graph", Fixture("k4.txt"), "--predict", "n=1e6,gamma=2",
                      "--out-dir", Path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = ReadMetrics(Path("a/audit_summary.csv"));
  EXPECT_EQ(summary["predicted_max_size"], "100");
  EXPECT_EQ(summary["kk_holds"], "1");
  auto kk = ReadMetrics(Path("a/kk.csv"));
  EXPECT_EQ(kk["triangles"], "4");
  EXPECT_EQ(kk["kk_holds"], "1");
}

TEST_F(CliTest, AuditBterRunFromManifest) {
  ASSERT_EQ(Cli({"generate", "--powerlaw", "4000,2,60", "--seed", "6", "--out", Path("g.txt")})
                .code, 0);
  const auto r = Cli({"audit", "--graph", Path("g.txt"), "--manifest",
                      Path("g.txt.manifest.json"), "--out-dir", Path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = ReadMetrics(Path("a/audit_summary.csv"));
  EXPECT_GT(std::stoi(summary["blocks"]), 0);
  EXPECT_GT(std::stod(summary["pass_fraction"]), 0.5);
  EXPECT_EQ(summary["kk_holds"], "1");
  std::istringstream audit(ReadFile(Path("a/audit.csv")));
  std::string line;
  std::getline(audit, line);
  EXPECT_EQ(line,
            "block,s,expected_triangles,wedge_threshold,passes,core_c025,core_c05,core_c10,"
            "exact,side_condition_ratio");
}

TEST_F(CliTest, AuditRejectsPartitionWithUnknownNodes) {
  WriteText(Path("p.csv"), "node,block,bar_d,rho,excess\n0,0,2,1,0\n1,0,2,1,0\n9,0,2,1,0\n");
  EXPECT_EQ(Cli({"audit", "--graph", Fixture("k4.txt"), "--partition", Path("p.csv"),
                 "--out-dir", Path("a")}).code, 3);
  EXPECT_EQ(Cli({"audit", "--graph", Fixture("k4.txt"), "--partition", Path("p.csv"),
                 "--nodes", "10", "--out-dir", Path("b")}).code, 0);
  EXPECT_EQ(Cli({"audit", "--graph", Fixture("k4.txt"), "--kappa", "1.5", "--out-dir",
                 Path("c")}).code, 2);
}

TEST_F(CliTest, ReplayReproducesOutputs) {
  ASSERT_EQ(Cli({"generate", "--powerlaw", "2000,2,50", "--seed", "8", "--threads", "2", "--out",
                 Path("g.txt")}).code, 0);
  ASSERT_EQ(Cli({"analyze", "--graph", Path("g.txt"), "--top-k", "3", "--out-dir", Path("a")})
                .code, 0);
  for (const auto& manifest : {Path("g.txt.manifest.json"), Path("a/manifest.json")}) {
    const auto r = Cli({"replay", "--manifest", manifest, "--threads", "3"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("MATCH"), std::string::npos);
    EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos) << r.out;
  }
}

TEST_F(CliTest, ReplayDetectsDrift) {
  ASSERT_EQ(Cli({"analyze", "--graph", Fixture("k4.txt"), "--metrics", "degree", "--out-dir",
                 Path("a")}).code, 0);
  auto manifest = nlohmann::json::parse(ReadFile(Path("a/manifest.json")));
  manifest["outputs"][0]["sha256"] = std::string(64, '0');
  WriteText(Path("tampered.json"), manifest.dump(2));
  const auto r = Cli({"replay", "--manifest", Path("tampered.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("MISMATCH graph.csv"), std::string::npos) << r.out;

  fs::copy_file(Fixture("k4.txt"), Path("k4.txt"));
  ASSERT_EQ(Cli({"analyze", "--graph", Path("k4.txt"), "--metrics", "degree", "--out-dir",
                 Path("b")}).code, 0);
  WriteText(Path("k4.txt"), "0 1\n");
  EXPECT_EQ(Cli({"replay", "--manifest", Path("b/manifest.json")}).code, 3);
}

TEST(CliBinaryTest, ExitCodesAndEnvironment) {
  const auto dir = testing::MakeTempDir("bter_cli_binary");
  const std::string cli = BTER_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("generate --help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("analyze --graph " + Fixture("malformed.txt") + " --out-dir " +
                (dir / "a").string()),
            3);
  EXPECT_EQ(run("generate --powerlaw 500,2,20 --seed 1 --threads -2 --out " +
                (dir / "g.txt").string()),
            2);
  EXPECT_EQ(run("generate --powerlaw 500,2,20 --seed 1 --out " + (dir / "g.txt").string()), 0);
  const std::string once = ReadFile(dir / "g.txt.manifest.json");
  ASSERT_EQ(setenv("BTER_THREADS", "3", 1), 0);
  EXPECT_EQ(run("generate --powerlaw 500,2,20 --seed 1 --out " + (dir / "g.txt").string()), 0);
  unsetenv("BTER_THREADS");
  EXPECT_EQ(ReadFile(dir / "g.txt.manifest.json"), once);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace bter
