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

#include "bter/community.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bter/errors.h"
#include "bter/format.h"

namespace bter {

std::string_view ToString(RhoVariant variant) {
  return variant == RhoVariant::kCubic ? "cubic" : "standard";
}

std::optional<RhoVariant> ParseRhoVariant(std::string_view text) {
  if (text == "standard") return RhoVariant::kStandard;
  if (text == "cubic") return RhoVariant::kCubic;
  return std::nullopt;
}

void ConnectivityFormula::Validate() const {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ConfigError("rho must lie in (0, 1], got " + FormatDouble(rho));
  }
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ConfigError("eta must be a finite value >= 0, got " +
                      FormatDouble(eta));
  }
}

double CommunityRho(std::uint32_t bar_d, std::uint32_t d_max,
                    const ConnectivityFormula& formula) {
  if (bar_d < 1 || bar_d > d_max) {
    throw std::domain_error("block degree " + std::to_string(bar_d) +
                            " outside [1, " + std::to_string(d_max) + "]");
  }
  const double ratio = std::log(static_cast<double>(bar_d) + 1.0) /
                       std::log(static_cast<double>(d_max) + 1.0);
  const double value =
      formula.rho * (1.0 - formula.eta * std::pow(ratio, formula.exponent()));
  return std::clamp(value, 0.0, 1.0);
}

std::vector<Block> PartitionCommunities(const DegreeSequence& seq) {
  std::vector<Block> blocks;
  const auto n = static_cast<NodeId>(seq.size());
  NodeId next = 0;
  while (next < n && seq[next] < 2) ++next;
  while (next < n) {
    const std::uint32_t bar_d = seq[next];
    const NodeId want = bar_d + 1;
    const NodeId size = std::min<NodeId>(want, n - next);
    blocks.push_back({next, size, bar_d});
    next += size;
  }
  return blocks;
}

std::vector<double> ExcessDegrees(const DegreeSequence& seq,
                                  std::span<const Block> blocks,
                                  std::span<const double> rho) {
  if (rho.size() != blocks.size()) {
    throw ConfigError("one rho value per block is required");
  }
  std::vector<double> excess(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    excess[i] = static_cast<double>(seq[i]);  // d_i = 1 -> e_i = 1
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double internal = rho[k] * (static_cast<double>(blocks[k].size) - 1.0);
    for (NodeId i = blocks[k].first; i < blocks[k].end(); ++i) {
      excess[i] = std::max(0.0, static_cast<double>(seq[i]) - internal);
    }
  }
  return excess;
}

CommunityPartition BuildPartition(const DegreeSequence& seq,
                                  const ConnectivityFormula& formula) {
  formula.Validate();
  CommunityPartition partition;
  partition.blocks = PartitionCommunities(seq);
  const std::uint32_t d_max = seq.max_degree();
  partition.rho.reserve(partition.blocks.size());
  for (const Block& b : partition.blocks) {
    partition.rho.push_back(CommunityRho(b.min_degree, d_max, formula));
  }
  if (!partition.blocks.empty()) {
    const Block& last = partition.blocks.back();
    if (last.size < last.min_degree + 1) {
      partition.rho.back() = 0.0;
      partition.last_block_short = true;
    }
  }
  partition.excess = ExcessDegrees(seq, partition.blocks, partition.rho);
  partition.assignment.assign(seq.size(), -1);
  for (std::size_t k = 0; k < partition.blocks.size(); ++k) {
    const Block& b = partition.blocks[k];
    for (NodeId i = b.first; i < b.end(); ++i) {
      partition.assignment[i] = static_cast<std::int64_t>(k);
    }
  }
  return partition;
}

void WritePartitionCsv(const CommunityPartition& partition,
                       std::ostream& out) {
  out << "node,block,bar_d,rho,excess\n";
  for (std::size_t i = 0; i < partition.assignment.size(); ++i) {
    const std::int64_t k = partition.assignment[i];
    out << i << ',' << k << ',';
    if (k < 0) {
      out << "0,0,";
    } else {
      out << partition.blocks[k].min_degree << ','
          << FormatDouble(partition.rho[k]) << ',';
    }
    out << FormatDouble(partition.excess[i]) << '\n';
  }
}

PartitionMembership ParsePartitionCsv(std::istream& in) {
  std::map<std::uint64_t, std::vector<NodeId>> by_block;
  PartitionMembership result;
  std::string line;
  std::uint64_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (view.rfind("node,block", 0) == 0) continue;
    }
    const auto c1 = view.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    const std::string_view node_text = view.substr(0, c1);
    const std::string_view block_text =
        c1 == std::string_view::npos
            ? std::string_view{}
            : view.substr(c1 + 1, c2 == std::string_view::npos
                                      ? std::string_view::npos
                                      : c2 - c1 - 1);
    auto node = ParseUint(Trim(node_text));
    if (!node || *node > UINT32_MAX - 1) {
      throw InputError("partition line " + std::to_string(line_number) +
                       ": bad node id");
    }
    const std::string_view block_trimmed = Trim(block_text);
    if (block_trimmed == "-1") continue;
    auto block = ParseUint(block_trimmed);
    if (!block) {
      throw InputError("partition line " + std::to_string(line_number) +
                       ": bad block id");
    }
    by_block[*block].push_back(static_cast<NodeId>(*node));
    result.max_node_plus_one =
        std::max(result.max_node_plus_one, static_cast<NodeId>(*node + 1));
  }
  for (auto& [k, members] : by_block) result.members.push_back(std::move(members));
  return result;
}

}  // namespace bter
