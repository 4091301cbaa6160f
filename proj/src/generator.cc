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

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bter/errors.h"
#include "bter/format.h"
#include "bter/parallel.h"
#include "bter/rng.h"

namespace bter {
namespace {

// Calls fn(i) for each index in [0, count) kept independently with
// probability p, jumping over rejected indices with geometric skips.
template <typename Fn>
void ForEachBernoulliIndex(std::uint64_t count, double p, CounterRng& rng,
                           Fn&& fn) {
  if (count == 0 || !(p > 0.0)) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t i = 0;
  while (true) {
    const double skip = std::floor(std::log(rng.UniformPositive()) / log_q);
    if (skip >= static_cast<double>(count - i)) return;
    i += static_cast<std::uint64_t>(skip);
    fn(i);
    if (++i >= count) return;
  }
}

constexpr std::size_t kRowsPerTask = 256;

// Runs row_fn(row, out) for rows [0, num_rows) in parallel and concatenates
// the per-task outputs in row order.
template <typename RowFn>
std::vector<Edge> CollectRows(std::size_t num_rows, int threads,
                              RowFn&& row_fn) {
  const std::size_t tasks = (num_rows + kRowsPerTask - 1) / kRowsPerTask;
  std::vector<std::vector<Edge>> parts(tasks);
  ParallelFor(tasks, threads, [&](std::size_t t, int) {
    const std::size_t end = std::min(num_rows, (t + 1) * kRowsPerTask);
    for (std::size_t row = t * kRowsPerTask; row < end; ++row) {
      row_fn(row, parts[t]);
    }
  });
  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  edges.reserve(total);
  for (const auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
  return edges;
}

double PairProbability(double wu, double wv, double total) {
  return std::min(1.0, wu * wv / total);
}

// Inverse-CDF sampler over non-negative weights.
class WeightedSampler {
 public:
  explicit WeightedSampler(const std::vector<double>& weights)
      : cumulative_(weights.size()) {
    double running = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      running += weights[i];
      cumulative_[i] = running;
      if (weights[i] > 0) last_positive_ = i;
    }
    total_ = running;
  }

  double total() const { return total_; }

  NodeId Draw(CounterRng& rng) const {
    const double x = rng.Uniform() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) return static_cast<NodeId>(last_positive_);
    return static_cast<NodeId>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
  double total_ = 0;
  std::size_t last_positive_ = 0;
};

enum Origin : std::uint8_t { kPhase1 = 0, kPhase2a, kPhase2b, kPhase2c, kNumOrigins };

}  // namespace

Graph GenerateEr(NodeId n, double p, std::uint64_t seed, int threads) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("ER probability must lie in [0, 1], got " + FormatDouble(p));
  }
  auto edges = CollectRows(n, threads, [&](std::size_t row, std::vector<Edge>& out) {
    const auto u = static_cast<NodeId>(row);
    CounterRng rng(seed, StreamId::kErdosRenyi, row);
    ForEachBernoulliIndex(n - 1 - u, p, rng, [&](std::uint64_t i) {
      out.push_back({u, static_cast<NodeId>(u + 1 + i)});
    });
  });
  return BuildGraph(n, edges).graph;
}

Graph GenerateCl(const DegreeSequence& seq, std::uint64_t seed, ClMode mode,
                 int threads) {
  if (seq.total() < 2) throw ConfigError("Chung-Lu needs a degree sum >= 2");
  const auto n = static_cast<NodeId>(seq.size());
  const double total = static_cast<double>(seq.total());
  if (mode == ClMode::kAuto) {
    mode = seq.size() <= kClExactThreshold ? ClMode::kExact : ClMode::kFast;
  }

  std::vector<Edge> edges;
  if (mode == ClMode::kExact) {
    edges = CollectRows(n, threads, [&](std::size_t row, std::vector<Edge>& out) {
      const auto u = static_cast<NodeId>(row);
      CounterRng rng(seed, StreamId::kChungLuExact, row);
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.Bernoulli(PairProbability(seq[u], seq[v], total))) {
          out.push_back({u, v});
        }
      }
    });
  } else {
    // Position k holds the k-th largest weight; node id n - 1 - k.
    auto weight = [&](std::size_t k) { return static_cast<double>(seq[n - 1 - k]); };
    auto node = [&](std::size_t k) { return static_cast<NodeId>(n - 1 - k); };
    edges = CollectRows(n, threads, [&](std::size_t u, std::vector<Edge>& out) {
      if (u + 1 >= n) return;
      CounterRng rng(seed, StreamId::kChungLuFast, u);
      std::size_t v = u + 1;
      double p = PairProbability(weight(u), weight(v), total);
      // Weights are non-increasing in v, so p bounds every later pair
      // probability; skip geometrically at rate p, then thin by q / p.
      while (v < n && p > 0) {
        if (p < 1.0) {
          const double skip =
              std::floor(std::log(rng.UniformPositive()) / std::log1p(-p));
          if (skip >= static_cast<double>(n - v)) break;
          v += static_cast<std::size_t>(skip);
        }
        const double q = PairProbability(weight(u), weight(v), total);
        if (rng.Uniform() < q / p) out.push_back({node(v), node(u)});
        p = q;
        ++v;
      }
    });
  }
  return BuildGraph(n, edges).graph;
}

void GenerationConfig::Validate() const {
  connectivity.Validate();
  if (!(manual_fraction >= 0.0 && manual_fraction <= 1.0)) {
    throw ConfigError("manual_fraction must lie in [0, 1]");
  }
  if (!(d1_weight > 0.0) || !std::isfinite(d1_weight)) {
    throw ConfigError("d1_weight must be positive");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ConfigError("beta must be >= 0");
  }
  if (q_override && *q_override % 2 != 0) {
    throw ConfigError("q must be even, got " + std::to_string(*q_override));
  }
}

GenerationConfig ParseGenerationConfig(std::istream& in, GenerationConfig base) {
  std::string line;
  std::uint64_t line_number = 0;
  bool rho_set = false, eta_set = false;
  auto fail = [&](const std::string& what) {
    throw ConfigError("config line " + std::to_string(line_number) + ": " + what);
  };
  auto number = [&](std::string_view text) {
    auto v = ParseDouble(text);
    if (!v) fail("expected a number, got \"" + std::string(text) + "\"");
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = Trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string_view key = Trim(view.substr(0, eq));
    const std::string_view value = Trim(view.substr(eq + 1));
    if (key == "seed") {
      auto v = ParseUint(value);
      if (!v) fail("seed must be a non-negative integer");
      base.seed = *v;
    } else if (key == "rho") {
      base.connectivity.rho = number(value);
      rho_set = true;
    } else if (key == "eta") {
      base.connectivity.eta = number(value);
      eta_set = true;
    } else if (key == "variant") {
      auto v = ParseRhoVariant(value);
      if (!v) fail("variant must be standard or cubic");
      base.connectivity.variant = *v;
    } else if (key == "manual_fraction") {
      base.manual_fraction = number(value);
    } else if (key == "d1_weight") {
      base.d1_weight = number(value);
    } else if (key == "q") {
      auto v = ParseUint(value);
      if (!v) fail("q must be a non-negative integer");
      base.q_override = *v;
    } else if (key == "beta") {
      base.beta = number(value);
    } else {
      fail("unknown key \"" + std::string(key) + "\"");
    }
  }
  if (base.connectivity.variant == RhoVariant::kCubic) {
    const auto cubic = ConnectivityFormula::Cubic();
    if ((rho_set && base.connectivity.rho != cubic.rho) ||
        (eta_set && base.connectivity.eta != cubic.eta)) {
      throw ConfigError("the cubic variant fixes rho = 0.7 and eta = 0.6");
    }
    base.connectivity = cubic;
  }
  base.Validate();
  return base;
}

void WritePhaseTraceCsv(const PhaseTrace& t, std::ostream& out) {
  out << "field,value\n";
  auto row = [&out](std::string_view field, const auto& value) {
    out << field << ',' << value << '\n';
  };
  row("phase1_raw", t.phase1.raw);
  row("phase1_kept", t.phase1.kept);
  row("phase2a_raw", t.phase2a.raw);
  row("phase2a_kept", t.phase2a.kept);
  row("phase2b_raw", t.phase2b.raw);
  row("phase2b_kept", t.phase2b.kept);
  row("phase2c_raw", t.phase2c.raw);
  row("phase2c_kept", t.phase2c.kept);
  row("degree1_nodes", t.degree1_nodes);
  row("manual_nodes", t.manual_nodes);
  row("paired_nodes", t.paired_nodes);
  row("excess_total", FormatDouble(t.excess_total));
  row("eta_scale", FormatDouble(t.eta_scale));
  row("scaled_excess_total", FormatDouble(t.scaled_excess_total));
  row("raw_edges", t.stats.raw_edges);
  row("self_loops_dropped", t.stats.self_loops_dropped);
  row("duplicates_dropped", t.stats.duplicates_dropped);
  row("edges",
      t.stats.raw_edges - t.stats.self_loops_dropped - t.stats.duplicates_dropped);
}

std::uint64_t DefaultPairCount(std::uint64_t p, std::uint64_t total_degree) {
  if (p == 0 || total_degree == 0) return 0;
  const double pd = static_cast<double>(p);
  const auto half = NearestInt(pd * pd / (2.0 * static_cast<double>(total_degree)));
  std::uint64_t q = 2 * static_cast<std::uint64_t>(std::max<std::int64_t>(0, half));
  if (q > p) q = p - (p % 2);
  return q;
}

double PhaseTwoScale(std::uint64_t p, std::uint64_t q, double excess_total,
                     double beta) {
  const double manual = static_cast<double>(p - q);
  const double denom = manual + excess_total;
  const double scale = denom > 0 ? 1.0 - 2.0 * manual / denom + beta : 1.0 + beta;
  return std::max(0.0, scale);
}

BterResult GenerateBter(const DegreeSequence& seq, const GenerationConfig& cfg,
                        int threads) {
  cfg.Validate();
  BterResult result;
  result.partition = BuildPartition(seq, cfg.connectivity);
  const CommunityPartition& part = result.partition;
  const auto n = static_cast<NodeId>(seq.size());
  PhaseTrace& trace = result.trace;

  std::vector<Edge> edges;
  std::vector<std::uint8_t> origins;

  // Phase 1: ER inside each block.
  {
    std::vector<std::vector<Edge>> per_block(part.blocks.size());
    ParallelFor(part.blocks.size(), threads, [&](std::size_t k, int) {
      const Block& b = part.blocks[k];
      CounterRng rng(cfg.seed, StreamId::kPhase1, k);
      auto& out = per_block[k];
      for (NodeId a = 0; a + 1 < b.size; ++a) {
        ForEachBernoulliIndex(b.size - 1 - a, part.rho[k], rng, [&](std::uint64_t i) {
          out.push_back({b.first + a, static_cast<NodeId>(b.first + a + 1 + i)});
        });
      }
    });
    for (const auto& block_edges : per_block) {
      edges.insert(edges.end(), block_edges.begin(), block_edges.end());
    }
    trace.phase1.raw = edges.size();
    origins.assign(edges.size(), kPhase1);
  }

  // Degree-1 update: the first p degree-1 nodes leave the CL layer, the
  // remaining r - p get weight d1_weight.
  std::vector<double> excess = part.excess;
  std::uint64_t r = 0;
  while (r < n && seq[r] == 1) ++r;
  const auto p = static_cast<std::uint64_t>(std::clamp<std::int64_t>(
      NearestInt(cfg.manual_fraction * static_cast<double>(r)), 0,
      static_cast<std::int64_t>(r)));
  for (std::uint64_t i = 0; i < r; ++i) excess[i] = i < p ? 0.0 : cfg.d1_weight;
  const std::uint64_t q = cfg.q_override ? *cfg.q_override
                                         : DefaultPairCount(p, seq.total());
  if (q > p) {
    throw ConfigError("q = " + std::to_string(q) + " exceeds p = " +
                      std::to_string(p) + " hand-wired degree-1 nodes");
  }
  trace.degree1_nodes = r;
  trace.manual_nodes = p;
  trace.paired_nodes = q;

  WeightedSampler sampler(excess);
  trace.excess_total = sampler.total();

  // Phase 2a: random pairing of q of the p set-aside nodes.
  std::vector<NodeId> manual(p);
  std::iota(manual.begin(), manual.end(), NodeId{0});
  {
    CounterRng rng(cfg.seed, StreamId::kPhase2a);
    for (std::uint64_t i = p; i > 1; --i) {
      std::swap(manual[i - 1], manual[rng.Below(i)]);
    }
    for (std::uint64_t i = 0; i + 1 < q; i += 2) {
      edges.push_back({manual[i], manual[i + 1]});
      origins.push_back(kPhase2a);
    }
    trace.phase2a.raw = q / 2;
  }

  // Phase 2b: one edge per remaining set-aside node, far endpoint drawn
  // proportional to excess degree. Set-aside nodes have zero weight and
  // are never drawn.
  if (sampler.total() > 0) {
    CounterRng rng(cfg.seed, StreamId::kPhase2b);
    for (std::uint64_t i = q; i < p; ++i) {
      edges.push_back({manual[i], sampler.Draw(rng)});
      origins.push_back(kPhase2b);
      ++trace.phase2b.raw;
    }
  }

  // Phase 2c: CL on the scaled excess degrees, both endpoints drawn
  // independently. Draws are chunked with one stream per chunk.
  trace.eta_scale = PhaseTwoScale(p, q, sampler.total(), cfg.beta);
  trace.scaled_excess_total = trace.eta_scale * sampler.total();
  {
    const auto count = static_cast<std::uint64_t>(
        std::max<std::int64_t>(0, NearestInt(trace.scaled_excess_total / 2.0)));
    constexpr std::uint64_t kChunk = 1 << 16;
    const std::size_t base = edges.size();
    edges.resize(base + count);
    origins.resize(base + count, kPhase2c);
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    ParallelFor(chunks, threads, [&](std::size_t c, int) {
      CounterRng rng(cfg.seed, StreamId::kPhase2c, c);
      const std::uint64_t end = std::min(count, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        const NodeId a = sampler.Draw(rng);
        const NodeId b = sampler.Draw(rng);
        edges[base + i] = {a, b};
      }
    });
    trace.phase2c.raw = count;
  }

  auto built = BuildGraphTagged(n, edges, origins, kNumOrigins);
  result.graph = std::move(built.graph);
  trace.stats = built.stats;
  trace.phase1.kept = built.kept_per_origin[kPhase1];
  trace.phase2a.kept = built.kept_per_origin[kPhase2a];
  trace.phase2b.kept = built.kept_per_origin[kPhase2b];
  trace.phase2c.kept = built.kept_per_origin[kPhase2c];
  return result;
}

}  // namespace bter
