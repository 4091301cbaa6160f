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

#include "bter/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "bter/errors.h"
#include "bter/parallel.h"

namespace bter {

TriangleWedgeCounts CountTrianglesWedges(const Graph& g, int threads) {
  const NodeId n = g.num_nodes();
  TriangleWedgeCounts counts;
  counts.node_wedges.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    const std::uint64_t d = g.degree(i);
    counts.node_wedges[i] = d < 2 ? 0 : d * (d - 1) / 2;
    counts.wedges += counts.node_wedges[i];
  }

  const int workers = WorkerCount(n, threads);
  std::vector<std::vector<std::uint64_t>> local(
      workers, std::vector<std::uint64_t>(n, 0));
  constexpr std::size_t kNodesPerTask = 512;
  const std::size_t tasks = (n + kNodesPerTask - 1) / kNodesPerTask;
  ParallelFor(tasks, workers, [&](std::size_t t, int worker) {
    auto& tri = local[worker];
    const NodeId end = static_cast<NodeId>(std::min<std::size_t>(n, (t + 1) * kNodesPerTask));
    for (NodeId u = static_cast<NodeId>(t * kNodesPerTask); u < end; ++u) {
      auto nu = g.neighbors(u);
      for (auto vi = std::upper_bound(nu.begin(), nu.end(), u); vi != nu.end(); ++vi) {
        const NodeId v = *vi;
        auto nv = g.neighbors(v);
        // Common neighbors w > v.
        auto a = vi + 1;
        auto b = std::upper_bound(nv.begin(), nv.end(), v);
        while (a != nu.end() && b != nv.end()) {
          if (*a < *b) {
            ++a;
          } else if (*b < *a) {
            ++b;
          } else {
            ++tri[u];
            ++tri[v];
            ++tri[*a];
            ++a;
            ++b;
          }
        }
      }
    }
  });

  counts.node_triangles.assign(n, 0);
  std::uint64_t corner_sum = 0;
  for (const auto& part : local) {
    for (NodeId i = 0; i < n; ++i) counts.node_triangles[i] += part[i];
  }
  for (NodeId i = 0; i < n; ++i) corner_sum += counts.node_triangles[i];
  counts.triangles = corner_sum / 3;
  return counts;
}

ClusteringProfile ComputeClusteringProfile(const Graph& g,
                                           const TriangleWedgeCounts& counts) {
  ClusteringProfile profile;
  profile.global_cc =
      counts.wedges == 0
          ? 0.0
          : 3.0 * static_cast<double>(counts.triangles) / static_cast<double>(counts.wedges);
  profile.per_node.resize(g.num_nodes());
  std::map<std::uint32_t, std::pair<double, std::uint64_t>> sums;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (counts.node_wedges[i] == 0) continue;
    const double c = static_cast<double>(counts.node_triangles[i]) /
                     static_cast<double>(counts.node_wedges[i]);
    profile.per_node[i] = c;
    auto& [sum, count] = sums[static_cast<std::uint32_t>(g.degree(i))];
    sum += c;
    ++count;
  }
  for (const auto& [d, entry] : sums) {
    profile.by_degree.push_back(
        {d, entry.first / static_cast<double>(entry.second), entry.second});
  }
  return profile;
}

ClusteringProfile ComputeClusteringProfile(const Graph& g, int threads) {
  return ComputeClusteringProfile(g, CountTrianglesWedges(g, threads));
}

MetricsReport ComputeReport(const Graph& g, const ReportOptions& options) {
  MetricsReport report;
  report.degrees = DegreeHistogram(g);
  if (options.clustering) {
    const auto counts = CountTrianglesWedges(g, options.threads);
    auto profile = ComputeClusteringProfile(g, counts);
    report.global_cc = profile.global_cc;
    report.clustering_by_degree = std::move(profile.by_degree);
    report.triangles = counts.triangles;
    report.wedges = counts.wedges;
  }
  if (options.spectrum) {
    SpectrumOptions spectrum_options = options.spectrum_options;
    spectrum_options.k = std::min<std::size_t>(spectrum_options.k, g.num_nodes());
    report.spectrum = TopEigenvalues(g, spectrum_options);
  }
  return report;
}

ReportDivergence CompareReports(const MetricsReport& a, const MetricsReport& b,
                                std::uint64_t cc_count_floor) {
  if (a.has_clustering() != b.has_clustering() ||
      a.spectrum.has_value() != b.spectrum.has_value()) {
    throw ConfigError("reports were computed with different metric sets");
  }
  ReportDivergence out;
  out.degree_tv = TotalVariation(a.degrees, b.degrees);

  if (a.has_clustering()) {
    out.global_cc_gap = std::abs(*a.global_cc - *b.global_cc);
    double gap = 0;
    auto ib = b.clustering_by_degree.begin();
    for (const auto& row : a.clustering_by_degree) {
      while (ib != b.clustering_by_degree.end() && ib->degree < row.degree) ++ib;
      if (ib == b.clustering_by_degree.end()) break;
      if (ib->degree != row.degree) continue;
      if (row.node_count < cc_count_floor || ib->node_count < cc_count_floor) continue;
      gap = std::max(gap, std::abs(row.mean_cc - ib->mean_cc));
    }
    out.cc_by_degree_max_gap = gap;
  }

  if (a.spectrum) {
    const auto& ea = a.spectrum->eigenvalues;
    const auto& eb = b.spectrum->eigenvalues;
    if (ea.size() != eb.size()) {
      throw ConfigError("spectra hold different numbers of eigenvalues (" +
                        std::to_string(ea.size()) + " vs " +
                        std::to_string(eb.size()) + ")");
    }
    double worst = 0;
    for (std::size_t i = 0; i < ea.size(); ++i) {
      const double scale = std::max(std::abs(ea[i]), std::abs(eb[i]));
      const double gap = scale == 0 ? 0.0 : std::abs(ea[i] - eb[i]) / scale;
      out.eigen_rel_gaps.push_back(gap);
      worst = std::max(worst, gap);
    }
    out.eigen_max_rel_gap = worst;
  }
  return out;
}

}  // namespace bter
