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

#ifndef BTER_METRICS_H_
#define BTER_METRICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "bter/degree.h"
#include "bter/graph.h"
#include "bter/spectrum.h"

namespace bter {

// Exact triangle and wedge counts. node_triangles[i] is the number of
// triangles containing i; node_wedges[i] = C(degree(i), 2).
struct TriangleWedgeCounts {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  std::vector<std::uint64_t> node_triangles;
  std::vector<std::uint64_t> node_wedges;
};

// Edge iterator with sorted-list intersection: for each edge (u, v), u < v,
// the common neighbors w > v close a triangle found exactly once. Parallel
// over u with per-worker integer accumulators, so results do not depend on
// the thread count.
TriangleWedgeCounts CountTrianglesWedges(const Graph& g, int threads = 1);

struct DegreeClustering {
  std::uint32_t degree = 0;
  double mean_cc = 0;
  std::uint64_t node_count = 0;

  friend bool operator==(const DegreeClustering&,
                         const DegreeClustering&) = default;
};

struct ClusteringProfile {
  // 3 * triangles / wedges, or 0 for a wedge-free graph.
  double global_cc = 0;
  // Local coefficient per node; empty for nodes centering no wedge.
  std::vector<std::optional<double>> per_node;
  // Mean local coefficient by degree, degrees >= 2 only, ascending.
  std::vector<DegreeClustering> by_degree;
};

ClusteringProfile ComputeClusteringProfile(const Graph& g,
                                           const TriangleWedgeCounts& counts);
ClusteringProfile ComputeClusteringProfile(const Graph& g, int threads = 1);

// The comparable summary of one graph. Optional parts are present only when
// computed (or loaded).
struct MetricsReport {
  DegreeDistribution degrees;
  std::optional<double> global_cc;
  std::vector<DegreeClustering> clustering_by_degree;
  std::optional<std::uint64_t> triangles;
  std::optional<std::uint64_t> wedges;
  std::optional<SpectrumReport> spectrum;

  bool has_clustering() const { return global_cc.has_value(); }
};

struct ReportOptions {
  bool clustering = true;
  bool spectrum = true;
  SpectrumOptions spectrum_options;
  int threads = 1;
};

MetricsReport ComputeReport(const Graph& g, const ReportOptions& options);

struct ReportDivergence {
  double degree_tv = 0;
  std::optional<double> global_cc_gap;
  // Max |mean_cc_a - mean_cc_b| over degrees present in both reports with
  // at least the count floor of nodes on each side; 0 when none qualify.
  std::optional<double> cc_by_degree_max_gap;
  // |lambda_a - lambda_b| / max(|lambda_a|, |lambda_b|) per rank.
  std::vector<double> eigen_rel_gaps;
  std::optional<double> eigen_max_rel_gap;
};

// Throws ConfigError when the reports carry different metric sets or
// spectra of different length.
ReportDivergence CompareReports(const MetricsReport& a, const MetricsReport& b,
                                std::uint64_t cc_count_floor = 1);

}  // namespace bter

#endif  // BTER_METRICS_H_
