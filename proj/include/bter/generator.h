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

#ifndef BTER_GENERATOR_H_
#define BTER_GENERATOR_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bter/community.h"
#include "bter/degree.h"
#include "bter/graph.h"

namespace bter {

// Each unordered pair independently with probability p. Deterministic in
// (n, p, seed) for any thread count.
Graph GenerateEr(NodeId n, double p, std::uint64_t seed, int threads = 1);

enum class ClMode {
  kAuto,   // exact up to kClExactThreshold nodes, fast above
  kExact,  // one Bernoulli trial per pair, O(n^2)
  kFast,   // edge skipping over weight-sorted nodes, O(n + m)
};
inline constexpr std::size_t kClExactThreshold = 2000;

// Chung-Lu: pair (i, j) present independently with probability
// min(1, d_i d_j / sum(d)). Both modes sample exactly this distribution;
// they consume randomness differently, so equal seeds give different
// graphs across modes. Node i has target degree seq[i].
Graph GenerateCl(const DegreeSequence& seq, std::uint64_t seed,
                 ClMode mode = ClMode::kAuto, int threads = 1);

struct GenerationConfig {
  std::uint64_t seed = 0;
  ConnectivityFormula connectivity;
  // Share of degree-1 nodes wired by hand in phases 2a/2b.
  double manual_fraction = 0.75;
  // Excess weight of the degree-1 nodes left to the CL phase.
  double d1_weight = 1.10;
  // Number of hand-wired degree-1 nodes paired with each other. Even and
  // <= p when given; otherwise derived from the expected CL count.
  std::optional<std::uint64_t> q_override;
  // Extra phase-2c weight compensating for discarded repeats.
  double beta = 0.10;

  void Validate() const;
};

// Flat "key = value" text; '#' starts a comment. Keys: seed, rho, eta,
// variant, manual_fraction, d1_weight, q, beta. Unset keys keep the
// values already in `base`.
GenerationConfig ParseGenerationConfig(std::istream& in,
                                       GenerationConfig base = {});

struct PhaseCounts {
  std::uint64_t raw = 0;   // sampled before cleaning
  std::uint64_t kept = 0;  // surviving edges credited to this phase
};

struct PhaseTrace {
  PhaseCounts phase1;
  PhaseCounts phase2a;
  PhaseCounts phase2b;
  PhaseCounts phase2c;
  std::uint64_t degree1_nodes = 0;  // r
  std::uint64_t manual_nodes = 0;   // p
  std::uint64_t paired_nodes = 0;   // q
  double excess_total = 0;          // sum e_i after the degree-1 update
  double eta_scale = 0;             // phase-2c scale factor
  double scaled_excess_total = 0;   // sum e_i after scaling
  EdgeStreamStats stats;            // the final merge
};

void WritePhaseTraceCsv(const PhaseTrace& trace, std::ostream& out);

struct BterResult {
  Graph graph;
  PhaseTrace trace;
  CommunityPartition partition;
};

// Default q: 2 * nint(p^2 / (2 * total_degree)), reduced to the largest even
// value <= p if rounding overshoots.
std::uint64_t DefaultPairCount(std::uint64_t p, std::uint64_t total_degree);

// Phase-2c scale factor 1 - 2 (p - q) / ((p - q) + excess_total) + beta,
// floored at zero.
double PhaseTwoScale(std::uint64_t p, std::uint64_t q, double excess_total,
                     double beta);

// BTER: affinity blocks wired as ER graphs (phase 1), then degree-1
// handling (2a pairing, 2b single hand-wired edges) and a CL layer on the
// excess degrees (2c). All phases are merged and cleaned once at the end.
BterResult GenerateBter(const DegreeSequence& seq, const GenerationConfig& cfg,
                        int threads = 1);

}  // namespace bter

#endif  // BTER_GENERATOR_H_
