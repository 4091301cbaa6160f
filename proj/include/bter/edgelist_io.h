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

#ifndef BTER_EDGELIST_IO_H_
#define BTER_EDGELIST_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bter/graph.h"

namespace bter {

struct EdgeListReadOptions {
  // When set, ids are used verbatim and must lie in [0, num_nodes); isolated
  // nodes are preserved. Otherwise ids are compacted to 0..n-1 in increasing
  // order of the original id.
  std::optional<NodeId> num_nodes;
};

struct LoadedGraph {
  Graph graph;
  EdgeStreamStats stats;
  // original_ids[i] is the file id of node i.
  std::vector<std::uint64_t> original_ids;
  std::uint64_t data_lines = 0;
  // Nodes with at least one edge after cleaning. Differs from
  // graph.num_nodes() only when some id occurs solely in self-loops (or
  // when explicit node counts leave ids unused).
  NodeId nodes_with_edges = 0;
};

// SNAP-style edge list: '#' comment lines, blank lines ignored, otherwise
// exactly two non-negative integer ids separated by whitespace. Directed
// inputs are symmetrized. Throws InputError with the line number on
// malformed lines and on I/O failure.
LoadedGraph ReadSnapEdgeList(const std::filesystem::path& path,
                             const EdgeListReadOptions& options = {});
LoadedGraph ParseSnapEdgeList(std::istream& in,
                              const EdgeListReadOptions& options = {});

// One "u v" line per edge, u < v, in lexicographic order.
void WriteEdgeList(const Graph& g, std::ostream& out);
void WriteEdgeList(const Graph& g, const std::filesystem::path& path);

}  // namespace bter

#endif  // BTER_EDGELIST_IO_H_
