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

#ifndef BTER_COMMUNITY_H_
#define BTER_COMMUNITY_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bter/degree.h"
#include "bter/graph.h"

namespace bter {

enum class RhoVariant {
  kStandard,  // squared log ratio, user rho/eta
  kCubic,     // cubed log ratio with rho = 0.7, eta = 0.6
};

std::string_view ToString(RhoVariant variant);
std::optional<RhoVariant> ParseRhoVariant(std::string_view text);

// Per-block connectivity
//   rho_k = rho * (1 - eta * (log(bar_d + 1) / log(d_max + 1))^exponent),
// clamped to [0, 1].
struct ConnectivityFormula {
  RhoVariant variant = RhoVariant::kStandard;
  double rho = 0.95;
  double eta = 0.05;

  static ConnectivityFormula Standard(double rho, double eta) {
    return {RhoVariant::kStandard, rho, eta};
  }
  static ConnectivityFormula Cubic() { return {RhoVariant::kCubic, 0.7, 0.6}; }

  int exponent() const { return variant == RhoVariant::kCubic ? 3 : 2; }

  // rho in (0, 1], eta >= 0.
  void Validate() const;
};

// Throws std::domain_error unless 1 <= bar_d <= d_max.
double CommunityRho(std::uint32_t bar_d, std::uint32_t d_max,
                    const ConnectivityFormula& formula);

// Affinity blocks are contiguous node ranges of the sorted sequence.
struct Block {
  NodeId first = 0;
  NodeId size = 0;
  std::uint32_t min_degree = 0;  // bar_d_k

  NodeId end() const { return first + size; }
  friend bool operator==(const Block&, const Block&) = default;
};

// Greedy grouping of the nodes with degree >= 2 in ascending order: each
// block opens at the next unassigned node, takes its degree as bar_d and
// holds bar_d + 1 nodes; the final block keeps whatever remains.
std::vector<Block> PartitionCommunities(const DegreeSequence& seq);

// e_i = 1 for degree-1 nodes, otherwise d_i - rho_k (|block| - 1) clamped
// at zero.
std::vector<double> ExcessDegrees(const DegreeSequence& seq,
                                  std::span<const Block> blocks,
                                  std::span<const double> rho);

struct CommunityPartition {
  std::vector<Block> blocks;
  std::vector<double> rho;
  std::vector<double> excess;
  // assignment[i] = block index, or -1 for unassigned degree-1 nodes.
  std::vector<std::int64_t> assignment;

  // True when the final block is shorter than bar_d + 1 and was therefore
  // given rho = 0.
  bool last_block_short = false;
};

// Full preprocessing: blocks, per-block rho (last block zeroed when short)
// and excess degrees.
CommunityPartition BuildPartition(const DegreeSequence& seq,
                                  const ConnectivityFormula& formula);

// "node,block,bar_d,rho,excess"; unassigned nodes have block -1, bar_d 0.
void WritePartitionCsv(const CommunityPartition& partition,
                       std::ostream& out);

// Block memberships parsed back from a partition CSV, unassigned rows
// skipped. members[k] lists node ids of block k in file order.
struct PartitionMembership {
  std::vector<std::vector<NodeId>> members;
  NodeId max_node_plus_one = 0;
};
PartitionMembership ParsePartitionCsv(std::istream& in);

}  // namespace bter

#endif  // BTER_COMMUNITY_H_
