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

#include "bter/graph.h"

#include <algorithm>
#include <string>
#include <utility>

#include "bter/errors.h"

namespace bter {

Graph Graph::FromCanonicalEdges(NodeId num_nodes, std::vector<Edge> edges) {
  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_ = std::move(edges);
  g.offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) {
    g.offsets_[i] += g.offsets_[i - 1];
  }
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // With edges sorted by (u, v), node x first receives its smaller neighbors
  // (edges (u, x), increasing u) and then its larger ones (edges (x, v),
  // increasing v), so every neighbor list comes out sorted.
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (NodeId x = 0; x < num_nodes_; ++x) best = std::max(best, degree(x));
  return best;
}

bool Graph::HasEdge(NodeId u, NodeId v) const {
  if (u >= num_nodes_ || v >= num_nodes_) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

namespace {

struct TaggedEdge {
  Edge edge;
  std::uint8_t origin;
};

}  // namespace

TaggedBuildResult BuildGraphTagged(NodeId num_nodes,
                                   std::span<const Edge> stream,
                                   std::span<const std::uint8_t> origins,
                                   std::size_t num_origins) {
  TaggedBuildResult result;
  result.kept_per_origin.assign(num_origins, 0);
  result.stats.raw_edges = stream.size();

  std::vector<TaggedEdge> clean;
  clean.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    Edge e = stream[i];
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw InputError("edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") references a node >= " +
                       std::to_string(num_nodes));
    }
    if (e.u == e.v) {
      ++result.stats.self_loops_dropped;
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    clean.push_back({e, origins.empty() ? std::uint8_t{0} : origins[i]});
  }
  std::sort(clean.begin(), clean.end(),
            [](const TaggedEdge& a, const TaggedEdge& b) {
              if (a.edge != b.edge) return a.edge < b.edge;
              return a.origin < b.origin;
            });

  std::vector<Edge> edges;
  edges.reserve(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (i > 0 && clean[i].edge == clean[i - 1].edge) {
      ++result.stats.duplicates_dropped;
      continue;
    }
    edges.push_back(clean[i].edge);
    if (clean[i].origin < num_origins) ++result.kept_per_origin[clean[i].origin];
  }
  result.graph = Graph::FromCanonicalEdges(num_nodes, std::move(edges));
  return result;
}

BuildResult BuildGraph(NodeId num_nodes, std::span<const Edge> stream) {
  auto tagged = BuildGraphTagged(num_nodes, stream, {}, 1);
  return {std::move(tagged.graph), tagged.stats};
}

BuildResult BuildGraph(std::span<const Edge> stream) {
  NodeId n = 0;
  for (const Edge& e : stream) n = std::max({n, e.u + 1, e.v + 1});
  return BuildGraph(n, stream);
}

}  // namespace bter
