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

#ifndef BTER_GRAPH_H_
#define BTER_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bter {

using NodeId = std::uint32_t;

// An unordered node pair. Inside a Graph, u < v always holds; in raw edge
// streams either order (and u == v) may appear.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Accounting for one cleaning pass over a raw edge stream.
// Invariant: raw_edges == kept + self_loops_dropped + duplicates_dropped.
struct EdgeStreamStats {
  std::uint64_t raw_edges = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;

  friend bool operator==(const EdgeStreamStats&,
                         const EdgeStreamStats&) = default;
};

// Immutable simple undirected graph on nodes [0, n). Holds the canonical
// sorted edge list and a CSR adjacency with sorted neighbor lists.
class Graph {
 public:
  Graph() = default;

  // `edges` must be canonical (u < v), sorted, duplicate-free and < n.
  // Use BuildGraph for arbitrary streams.
  static Graph FromCanonicalEdges(NodeId num_nodes, std::vector<Edge> edges);

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId node) const {
    return {adjacency_.data() + offsets_[node],
            adjacency_.data() + offsets_[node + 1]};
  }

  std::size_t degree(NodeId node) const {
    return offsets_[node + 1] - offsets_[node];
  }

  std::size_t max_degree() const;

  bool HasEdge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_;
  }

 private:
  NodeId num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<NodeId> adjacency_;
};

struct BuildResult {
  Graph graph;
  EdgeStreamStats stats;
};

// Cleans a raw edge stream into a simple graph: orientation is ignored,
// self-loops and repeated pairs are dropped and counted. The node count is
// one past the largest id seen.
BuildResult BuildGraph(std::span<const Edge> stream);

// As above with an explicit node count; ids >= num_nodes throw InputError.
BuildResult BuildGraph(NodeId num_nodes, std::span<const Edge> stream);

// Same as BuildGraph, but each raw edge carries an origin tag in
// [0, num_origins). A pair emitted by several origins is credited to the
// smallest tag. kept_per_origin[t] counts final edges credited to tag t.
struct TaggedBuildResult {
  Graph graph;
  EdgeStreamStats stats;
  std::vector<std::uint64_t> kept_per_origin;
};
TaggedBuildResult BuildGraphTagged(NodeId num_nodes,
                                   std::span<const Edge> stream,
                                   std::span<const std::uint8_t> origins,
                                   std::size_t num_origins);

}  // namespace bter

#endif  // BTER_GRAPH_H_
