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

#include "bter/generator.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "bter/errors.h"
#include "bter/format.h"
#include "bter/metrics.h"
#include "test_support.h"

namespace bter {
namespace {

DegreeSequence Seq(std::vector<std::uint32_t> d) {
  return DegreeSequence::FromDegrees(std::move(d));
}

TEST(ErTest, ExtremeProbabilities) {
  EXPECT_EQ(GenerateEr(12, 1.0, 3), testing::Complete(12));
  EXPECT_EQ(GenerateEr(12, 0.0, 3).num_edges(), 0u);
  EXPECT_EQ(GenerateEr(12, 0.0, 3).num_nodes(), 12u);
  EXPECT_EQ(GenerateEr(0, 0.5, 3).num_nodes(), 0u);
  EXPECT_THROW(GenerateEr(5, 1.5, 3), ConfigError);
}

TEST(ErTest, MeanEdgeCountMatchesBinomial) {
  const int runs = 1000;
  const double pairs = 4950, p = 0.3;
  double sum = 0;
  for (int seed = 0; seed < runs; ++seed) sum += GenerateEr(100, p, seed).num_edges();
  const double sigma = std::sqrt(pairs * p * (1 - p) / runs);
  EXPECT_NEAR(sum / runs, pairs * p, 3 * sigma);
}

TEST(ErTest, ThreadCountDoesNotChangeOutput) {
  EXPECT_EQ(GenerateEr(3000, 0.01, 9, 1), GenerateEr(3000, 0.01, 9, 4));
}

TEST(ClTest, TwoNodeFrequency) {
  const auto seq = Seq({1, 1});
  const int runs = 10000;
  for (ClMode mode : {ClMode::kExact, ClMode::kFast}) {
    int hits = 0;
    for (int seed = 0; seed < runs; ++seed) hits += GenerateCl(seq, seed, mode).num_edges();
    EXPECT_NEAR(hits / double(runs), 0.5, 3 * std::sqrt(0.25 / runs));
  }
}

TEST(ClTest, RejectsTinyDegreeSum) {
  EXPECT_THROW(GenerateCl(Seq({1}), 0), ConfigError);
}

TEST(ClTest, RegularSequenceIsUniform) {
  // 40 nodes of degree 6: every pair has probability 36 / 240 = 0.15.
  const auto seq = Seq(std::vector<std::uint32_t>(40, 6));
  const int runs = 2000;
  double sum = 0;
  for (int seed = 0; seed < runs; ++seed) sum += GenerateCl(seq, seed, ClMode::kFast).num_edges();
  const double pairs = 780, p = 0.15;
  EXPECT_NEAR(sum / runs, pairs * p, 3 * std::sqrt(pairs * p * (1 - p) / runs));
}

TEST(ClTest, MeanDegreeTracksTargetPerBucket) {
  const auto seq = SynthesizePowerLaw(1000, 2.0, 40);
  ASSERT_LT(double(seq.max_degree()) * seq.max_degree(), double(seq.total()));
  const int runs = 200;
  for (ClMode mode : {ClMode::kExact, ClMode::kFast}) {
    std::vector<double> sum(seq.size(), 0.0);
    for (int seed = 0; seed < runs; ++seed) {
      const Graph g = GenerateCl(seq, seed, mode);
      for (NodeId i = 0; i < g.num_nodes(); ++i) sum[i] += g.degree(i);
    }
    std::map<std::uint32_t, std::pair<double, double>> bucket;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      bucket[seq[i]].first += sum[i] / runs;
      bucket[seq[i]].second += 1;
    }
    for (const auto& [d, acc] : bucket) {
      EXPECT_LT(std::fabs(acc.first / acc.second / d - 1.0), 0.05) << "degree " << d;
    }
  }
}

// Pair frequencies of the skipping sampler and of the per-pair Bernoulli
// sampler are compared with each other and with the exact probability. The
// per-pair z scores are pooled into one chi-square statistic: with 435 pairs
// a per-pair 3-sigma rule would trip on about one pair by chance alone.
TEST(ClTest, FastModeMatchesExactModePairFrequencies) {
  std::vector<std::uint32_t> d;
  for (std::uint32_t i = 1; i <= 30; ++i) d.push_back(i % 3 == 0 ? 3 * i : i);
  const auto seq = Seq(d);
  const NodeId n = 30;
  const int runs = 100000;
  std::vector<double> exact(n * n, 0), fast(n * n, 0);
  for (int seed = 0; seed < runs; ++seed) {
    const Graph a = GenerateCl(seq, seed, ClMode::kExact);
    const Graph b = GenerateCl(seq, seed, ClMode::kFast);
    for (const Edge& e : a.edges()) exact[e.u * n + e.v] += 1;
    for (const Edge& e : b.edges()) fast[e.u * n + e.v] += 1;
  }
  double chi2_pair = 0, chi2_fast = 0, max_z = 0;
  int free_pairs = 0, capped = 0;
  const double total = double(seq.total());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = std::min(1.0, double(seq[u]) * seq[v] / total);
      const double fe = exact[u * n + v] / runs, ff = fast[u * n + v] / runs;
      if (p >= 1.0) {
        EXPECT_EQ(fe, 1.0);
        EXPECT_EQ(ff, 1.0);
        ++capped;
        continue;
      }
      const double var = p * (1 - p) / runs;
      const double z = (ff - fe) / std::sqrt(2 * var);
      chi2_pair += z * z;
      chi2_fast += (ff - p) * (ff - p) / var;
      max_z = std::max(max_z, std::fabs(z));
      ++free_pairs;
    }
  }
  ASSERT_GT(capped, 0);
  const double limit = free_pairs + 3 * std::sqrt(2.0 * free_pairs);
  EXPECT_LT(chi2_pair, limit);
  EXPECT_LT(chi2_fast, limit);
  EXPECT_LT(max_z, 5.0);
}

TEST(ClTest, ThreadCountDoesNotChangeOutput) {
  const auto seq = SynthesizePowerLaw(5000, 2.0, 80);
  for (ClMode mode : {ClMode::kExact, ClMode::kFast}) {
    EXPECT_EQ(GenerateCl(seq, 4, mode, 1), GenerateCl(seq, 4, mode, 4));
  }
}

TEST(BterFormulaTest, PhaseTwoScale) {
  EXPECT_NEAR(PhaseTwoScale(20, 0, 90.0, 0.10), 0.7363636363636363, 1e-15);
  EXPECT_DOUBLE_EQ(PhaseTwoScale(4, 4, 10.0, 0.10), 1.1);
  EXPECT_DOUBLE_EQ(PhaseTwoScale(5, 0, 0.0, 0.0), 0.0);  // floored, not negative
}

TEST(BterFormulaTest, DefaultPairCount) {
  EXPECT_EQ(DefaultPairCount(20, 100), 4u);
  EXPECT_EQ(DefaultPairCount(0, 100), 0u);
  // 9 / 4 rounds to 2 pairs, more than the 3 available nodes allow.
  EXPECT_EQ(DefaultPairCount(3, 2), 2u);
  // Half-even rounding: 1/2 -> 0.
  EXPECT_EQ(DefaultPairCount(2, 4), 0u);
}

TEST(BterTest, ForcedPairing) {
  GenerationConfig cfg;
  cfg.manual_fraction = 1.0;
  cfg.q_override = 2;
  const auto result = GenerateBter(Seq({1, 1}), cfg);
  EXPECT_EQ(result.graph, testing::MakeGraph(2, {{0, 1}}));
  EXPECT_EQ(result.trace.phase2a.raw, 1u);
  EXPECT_EQ(result.trace.phase2b.raw, 0u);
  EXPECT_EQ(result.trace.phase2c.raw, 0u);
}

TEST(BterTest, ConfigErrors) {
  GenerationConfig cfg;
  cfg.manual_fraction = 1.0;
  cfg.q_override = 4;
  EXPECT_THROW(GenerateBter(Seq({1, 1}), cfg), ConfigError);
  cfg.q_override = 1;
  EXPECT_THROW(GenerateBter(Seq({1, 1}), cfg), ConfigError);
  cfg = {};
  cfg.manual_fraction = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.d1_weight = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = {};
  cfg.beta = -0.1;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(BterTest, DeterministicAndThreadIndependent) {
  const auto seq = SynthesizePowerLaw(20000, 2.0, 150);
  GenerationConfig cfg;
  cfg.seed = 42;
  const auto a = GenerateBter(seq, cfg, 1);
  const auto b = GenerateBter(seq, cfg, 1);
  const auto c = GenerateBter(seq, cfg, 4);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.graph, c.graph);
  std::ostringstream ta, tc;
  WritePhaseTraceCsv(a.trace, ta);
  WritePhaseTraceCsv(c.trace, tc);
  EXPECT_EQ(ta.str(), tc.str());
  cfg.seed = 43;
  EXPECT_NE(GenerateBter(seq, cfg).graph, a.graph);
}

TEST(BterTest, FullBlocksWithUnitRhoAreDisjointCliques) {
  const auto seq = Seq(std::vector<std::uint32_t>(5 * 7, 6));
  GenerationConfig cfg;
  cfg.connectivity = ConnectivityFormula::Standard(1.0, 0.0);
  const auto result = GenerateBter(seq, cfg);
  EXPECT_EQ(result.graph.num_edges(), 5u * 21u);
  for (const Edge& e : result.graph.edges()) EXPECT_EQ(e.u / 7, e.v / 7);
  EXPECT_EQ(result.trace.phase2c.raw, 0u);
}

// Accounting and containment over a spread of sequences and configs.
TEST(BterTest, PhaseAccountingInvariants) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = std::uniform_int_distribution<std::uint64_t>(2, 4000)(rng);
    const auto seq = SynthesizePowerLaw(
        n, std::uniform_real_distribution<double>(1.5, 3.0)(rng),
        std::uniform_int_distribution<std::uint32_t>(1, 120)(rng));
    GenerationConfig cfg;
    cfg.seed = rng();
    cfg.connectivity = ConnectivityFormula::Standard(
        std::uniform_real_distribution<double>(0.2, 1.0)(rng),
        std::uniform_real_distribution<double>(0.0, 1.3)(rng));
    cfg.manual_fraction = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (trial % 2) cfg.q_override = 0;
    const auto result = GenerateBter(seq, cfg);
    const PhaseTrace& t = result.trace;
    const auto& part = result.partition;

    EXPECT_EQ(t.stats.raw_edges, t.phase1.raw + t.phase2a.raw + t.phase2b.raw + t.phase2c.raw);
    EXPECT_EQ(result.graph.num_edges(),
              t.phase1.kept + t.phase2a.kept + t.phase2b.kept + t.phase2c.kept);
    EXPECT_EQ(t.phase1.kept, t.phase1.raw);  // ER blocks never repeat a pair
    EXPECT_EQ(t.manual_nodes,
              static_cast<std::uint64_t>(NearestInt(cfg.manual_fraction * t.degree1_nodes)));
    EXPECT_EQ(t.phase2a.raw, t.paired_nodes / 2);
    if (t.excess_total > 0) {
      EXPECT_EQ(t.phase2b.raw, t.manual_nodes - t.paired_nodes);
    }
    EXPECT_EQ(t.phase2c.raw,
              static_cast<std::uint64_t>(NearestInt(t.scaled_excess_total / 2.0)));
    EXPECT_DOUBLE_EQ(t.eta_scale, PhaseTwoScale(t.manual_nodes, t.paired_nodes,
                                                t.excess_total, cfg.beta));

    std::uint64_t internal = 0;
    for (const Edge& e : result.graph.edges()) {
      if (part.assignment[e.u] >= 0 && part.assignment[e.u] == part.assignment[e.v]) ++internal;
    }
    EXPECT_GE(internal, t.phase1.kept);

    const auto counts = CountTrianglesWedges(result.graph);
    EXPECT_TRUE(t.stats.raw_edges == 0 || result.graph.num_edges() > 0);
    EXPECT_LE(3 * counts.triangles, counts.wedges);
  }
}

TEST(BterTest, DegreeFidelityPerBucket) {
  const auto seq = SynthesizePowerLaw(10000, 2.0, 100);
  const int runs = 50;
  std::vector<double> sum(seq.size(), 0.0);
  for (int seed = 1; seed <= runs; ++seed) {
    GenerationConfig cfg;
    cfg.seed = seed;
    const Graph g = GenerateBter(seq, cfg).graph;
    for (NodeId i = 0; i < g.num_nodes(); ++i) sum[i] += g.degree(i);
  }
  std::map<std::uint32_t, std::pair<double, int>> bucket;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    bucket[seq[i]].first += sum[i] / runs;
    bucket[seq[i]].second += 1;
  }
  int checked = 0;
  for (const auto& [d, acc] : bucket) {
    if (acc.second < 50) continue;
    ++checked;
    EXPECT_LT(std::fabs(acc.first / acc.second / d - 1.0), 0.10) << "degree " << d;
  }
  EXPECT_GE(checked, 5);
}

TEST(BterTest, ClusteringFarAboveChungLu) {
  const auto seq = SynthesizePowerLaw(5000, 2.0, 80);
  GenerationConfig cfg;
  cfg.seed = 5;
  const double bter = ComputeClusteringProfile(GenerateBter(seq, cfg).graph).global_cc;
  const double cl = ComputeClusteringProfile(GenerateCl(seq, 5)).global_cc;
  EXPECT_GT(bter, 5 * cl);
}

TEST(GenerationConfigTest, ParsesKeys) {
  std::istringstream in(
      "# model\nseed = 9\nrho=0.7\neta = 1.25  # epinions\nmanual_fraction=0.5\n"
      "d1_weight=1.2\nq=4\nbeta=0\n");
  const auto cfg = ParseGenerationConfig(in);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.connectivity.rho, 0.7);
  EXPECT_EQ(cfg.connectivity.eta, 1.25);
  EXPECT_EQ(cfg.manual_fraction, 0.5);
  EXPECT_EQ(cfg.d1_weight, 1.2);
  EXPECT_EQ(cfg.q_override, 4u);
  EXPECT_EQ(cfg.beta, 0.0);
}

TEST(GenerationConfigTest, CubicVariantFixesConstants) {
  std::istringstream in("variant = cubic\n");
  const auto cfg = ParseGenerationConfig(in);
  EXPECT_EQ(cfg.connectivity.variant, RhoVariant::kCubic);
  EXPECT_EQ(cfg.connectivity.rho, 0.7);
  EXPECT_EQ(cfg.connectivity.eta, 0.6);
  std::istringstream clash("variant = cubic\nrho = 0.9\n");
  EXPECT_THROW(ParseGenerationConfig(clash), ConfigError);
}

TEST(GenerationConfigTest, RejectsBadInput) {
  for (const char* text : {"colour = red\n", "q = 3\n", "rho\n", "beta = x\n",
                           "manual_fraction = 2\n", "variant = linear\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(ParseGenerationConfig(in), ConfigError) << text;
  }
}

}  // namespace
}  // namespace bter
