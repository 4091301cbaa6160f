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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "bter/community.h"
#include "bter/degree.h"
#include "bter/edgelist_io.h"
#include "bter/errors.h"
#include "bter/format.h"
#include "bter/generator.h"
#include "bter/metrics.h"
#include "bter/spectrum.h"
#include "bter/theory.h"
#include "digest.h"
#include "json.hpp"

namespace bter::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::vector<std::string> SplitList(std::string_view text, char sep = ',') {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(sep, start), text.size());
    parts.emplace_back(Trim(text.substr(start, end - start)));
    start = end + 1;
  }
  return parts;
}

double RequireDouble(std::string_view text, const std::string& what) {
  auto v = ParseDouble(Trim(text));
  if (!v) throw ConfigError(what + ": expected a number, got \"" + std::string(text) + "\"");
  return *v;
}

std::uint64_t RequireUint(std::string_view text, const std::string& what) {
  auto v = ParseUint(Trim(text));
  if (!v) throw ConfigError(what + ": expected a non-negative integer, got \"" +
                            std::string(text) + "\"");
  return *v;
}

// Collects manifest fields and the files a command writes.
class Manifest {
 public:
  Manifest(std::string command, const RunContext& ctx, std::string output_flag)
      : base_dir_(".") {
    doc_["tool"] = kToolName;
    doc_["version"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["argv"] = ctx.argv;
    doc_["cwd"] = fs::current_path().string();
    doc_["output_flag"] = std::move(output_flag);
    doc_["inputs"] = json::array();
    doc_["config"] = json::object();
  }

  json& config() { return doc_["config"]; }
  json& doc() { return doc_; }

  void SetBaseDir(const fs::path& dir) { base_dir_ = dir; }

  void AddInput(const std::string& role, const fs::path& path) {
    doc_["inputs"].push_back({{"role", role},
                              {"path", fs::absolute(path).lexically_normal().string()},
                              {"sha256", Sha256File(path)}});
  }

  // Opens base_dir / name for writing and records it as an output.
  std::ofstream Open(const std::string& name) {
    const fs::path path = base_dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    names_.push_back(name);
    return out;
  }

  void Write(const fs::path& path, int exit_code) {
    json outputs = json::array();
    for (const auto& name : names_) {
      outputs.push_back({{"file", name}, {"sha256", Sha256File(base_dir_ / name)}});
    }
    doc_["outputs"] = std::move(outputs);
    doc_["exit_code"] = exit_code;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << doc_.dump(2) << '\n';
  }

 private:
  json doc_;
  fs::path base_dir_;
  std::vector<std::string> names_;
};

void Close(std::ofstream& out, const std::string& name) {
  out.close();
  if (!out) throw InputError("write failed for " + name);
}

fs::path PrepareOutDir(const std::string& dir) {
  if (dir.empty()) throw ConfigError("--out-dir is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create directory " + dir);
  return dir;
}

std::optional<NodeId> NodeCount(const std::optional<std::uint64_t>& nodes) {
  if (!nodes) return std::nullopt;
  if (*nodes > UINT32_MAX - 1) throw ConfigError("--nodes is too large");
  return static_cast<NodeId>(*nodes);
}

// ---------------------------------------------------------------- generate

DegreeSequence ParsePowerLawSpec(const std::string& text, json& source) {
  const auto parts = SplitList(text);
  if (parts.size() != 3) throw ConfigError("--powerlaw expects n,gamma,dmax");
  const std::uint64_t n = RequireUint(parts[0], "--powerlaw n");
  const double gamma = RequireDouble(parts[1], "--powerlaw gamma");
  const std::uint64_t d_max = RequireUint(parts[2], "--powerlaw dmax");
  if (d_max == 0 || d_max > UINT32_MAX) throw ConfigError("--powerlaw dmax out of range");
  source = {{"kind", "powerlaw"}, {"n", n}, {"gamma", gamma}, {"dmax", d_max}};
  return SynthesizePowerLaw(n, gamma, static_cast<std::uint32_t>(d_max));
}

GenerationConfig ResolveBterConfig(const GenerateOptions& o, Manifest& manifest) {
  GenerationConfig cfg;
  bool seed_given = false;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw InputError("cannot read " + o.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    seed_given = text.str().find("seed") != std::string::npos;
    std::istringstream parse(text.str());
    cfg = ParseGenerationConfig(parse);
    manifest.AddInput("config", o.config_path);
  }
  if (o.seed) {
    cfg.seed = *o.seed;
    seed_given = true;
  }
  if (!seed_given) throw ConfigError("--seed is required");
  if (!o.variant.empty()) {
    const auto variant = ParseRhoVariant(o.variant);
    if (!variant) throw ConfigError("--variant must be standard or cubic");
    cfg.connectivity.variant = *variant;
  }
  if (cfg.connectivity.variant == RhoVariant::kCubic) {
    const auto cubic = ConnectivityFormula::Cubic();
    if ((o.rho && *o.rho != cubic.rho) || (o.eta && *o.eta != cubic.eta)) {
      throw ConfigError("the cubic variant fixes rho = 0.7 and eta = 0.6");
    }
    cfg.connectivity = cubic;
  } else {
    if (o.rho) cfg.connectivity.rho = *o.rho;
    if (o.eta) cfg.connectivity.eta = *o.eta;
  }
  if (o.manual_fraction) cfg.manual_fraction = *o.manual_fraction;
  if (o.d1_weight) cfg.d1_weight = *o.d1_weight;
  if (o.q) cfg.q_override = *o.q;
  if (o.beta) cfg.beta = *o.beta;
  cfg.Validate();
  return cfg;
}

}  // namespace

int Generate(const GenerateOptions& o, const RunContext& ctx) {
  if (o.out.empty()) throw ConfigError("--out is required");
  Manifest manifest("generate", ctx, "--out");
  const fs::path out_path = o.out;
  const fs::path base = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  if (!fs::is_directory(base)) throw InputError("output directory " + base.string() + " does not exist");
  manifest.SetBaseDir(base);
  const std::string stem = out_path.filename().string();
  json& config = manifest.config();
  config["model"] = o.model;

  const int sources = !o.degrees_path.empty() + !o.graph_path.empty() + !o.powerlaw.empty();
  Graph graph;
  if (o.model == "er") {
    if (sources != 0) throw ConfigError("the er model takes --n and --p, not a degree source");
    if (!o.er_nodes || !o.er_p) throw ConfigError("the er model needs --n and --p");
    if (!o.seed) throw ConfigError("--seed is required");
    if (*o.er_nodes > UINT32_MAX - 1) throw ConfigError("--n is too large");
    config["n"] = *o.er_nodes;
    config["p"] = *o.er_p;
    config["seed"] = *o.seed;
    graph = GenerateEr(static_cast<NodeId>(*o.er_nodes), *o.er_p, *o.seed, ctx.threads);
  } else {
    if (sources != 1) {
      throw ConfigError("give exactly one of --degrees, --from-graph, --powerlaw");
    }
    if (o.er_nodes || o.er_p) throw ConfigError("--n and --p apply to the er model only");
    json source;
    std::optional<DegreeSequence> seq;
    if (!o.degrees_path.empty()) {
      manifest.AddInput("degrees", o.degrees_path);
      seq = ReadDegreeFile(o.degrees_path);
      source = {{"kind", "degrees"}};
    } else if (!o.graph_path.empty()) {
      manifest.AddInput("graph", o.graph_path);
      seq = ExtractDegrees(ReadSnapEdgeList(o.graph_path).graph);
      source = {{"kind", "graph"}};
    } else {
      seq = ParsePowerLawSpec(o.powerlaw, source);
    }
    config["source"] = source;

    if (o.model == "cl") {
      if (!o.seed) throw ConfigError("--seed is required");
      const bool bter_flags = o.rho || o.eta || !o.variant.empty() || o.manual_fraction ||
                              o.d1_weight || o.q || o.beta || !o.config_path.empty();
      if (bter_flags) throw ConfigError("BTER parameters do not apply to the cl model");
      ClMode mode = ClMode::kAuto;
      if (o.cl_mode == "exact") mode = ClMode::kExact;
      else if (o.cl_mode == "fast") mode = ClMode::kFast;
      else if (o.cl_mode != "auto") throw ConfigError("--cl-mode must be auto, exact or fast");
      config["cl_mode"] = o.cl_mode;
      config["seed"] = *o.seed;
      graph = GenerateCl(*seq, *o.seed, mode, ctx.threads);
    } else if (o.model == "bter") {
      const GenerationConfig cfg = ResolveBterConfig(o, manifest);
      config["seed"] = cfg.seed;
      config["variant"] = std::string(ToString(cfg.connectivity.variant));
      config["rho"] = cfg.connectivity.rho;
      config["eta"] = cfg.connectivity.eta;
      config["manual_fraction"] = cfg.manual_fraction;
      config["d1_weight"] = cfg.d1_weight;
      config["q"] = cfg.q_override ? json(*cfg.q_override) : json("default");
      config["beta"] = cfg.beta;
      BterResult result = GenerateBter(*seq, cfg, ctx.threads);
      graph = std::move(result.graph);
      {
        auto out = manifest.Open(stem + ".trace.csv");
        WritePhaseTraceCsv(result.trace, out);
        Close(out, stem + ".trace.csv");
      }
      {
        auto out = manifest.Open(stem + ".partition.csv");
        WritePartitionCsv(result.partition, out);
        Close(out, stem + ".partition.csv");
      }
    } else {
      throw ConfigError("--model must be bter, cl or er");
    }
  }

  {
    auto out = manifest.Open(stem);
    WriteEdgeList(graph, out);
    Close(out, stem);
  }
  manifest.doc()["nodes"] = graph.num_nodes();
  manifest.doc()["edges"] = graph.num_edges();
  manifest.Write(base / (stem + ".manifest.json"), kExitOk);
  *ctx.out << "wrote " << graph.num_edges() << " edges on " << graph.num_nodes()
           << " nodes to " << o.out << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

namespace {

struct MetricSet {
  bool degree = false, cc = false, triangles = false, spectrum = false;
};

MetricSet ParseMetrics(const std::string& text) {
  MetricSet set;
  for (const auto& name : SplitList(text)) {
    if (name == "degree") set.degree = true;
    else if (name == "cc") set.cc = true;
    else if (name == "triangles") set.triangles = true;
    else if (name == "spectrum") set.spectrum = true;
    else throw ConfigError("unknown metric \"" + name +
                           "\" (choose from degree, cc, triangles, spectrum)");
  }
  return set;
}

void WriteMetricRow(std::ostream& out, std::string_view name, const std::string& value) {
  out << name << ',' << value << '\n';
}

void WriteSpectrumCsv(const SpectrumReport& report, std::ostream& out) {
  out << "rank,eigenvalue,residual\n";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    out << i + 1 << ',' << FormatDouble(report.eigenvalues[i]) << ','
        << FormatDouble(report.residuals[i]) << '\n';
  }
}

}  // namespace

int Analyze(const AnalyzeOptions& o, const RunContext& ctx) {
  if (o.graph_path.empty()) throw ConfigError("--graph is required");
  const MetricSet metrics = ParseMetrics(o.metrics);
  const fs::path dir = PrepareOutDir(o.out_dir);
  Manifest manifest("analyze", ctx, "--out-dir");
  manifest.SetBaseDir(dir);
  manifest.AddInput("graph", o.graph_path);
  json& config = manifest.config();
  config["metrics"] = o.metrics;
  if (o.nodes) config["nodes"] = *o.nodes;
  if (metrics.spectrum) {
    config["top_k"] = o.top_k;
    config["tolerance"] = o.tolerance;
    config["spectrum_seed"] = o.spectrum_seed;
  }

  EdgeListReadOptions read;
  read.num_nodes = NodeCount(o.nodes);
  const LoadedGraph loaded = ReadSnapEdgeList(o.graph_path, read);
  const Graph& g = loaded.graph;

  {
    auto out = manifest.Open("graph.csv");
    out << "metric,value\n";
    WriteMetricRow(out, "nodes", std::to_string(g.num_nodes()));
    WriteMetricRow(out, "edges", std::to_string(g.num_edges()));
    WriteMetricRow(out, "data_lines", std::to_string(loaded.data_lines));
    WriteMetricRow(out, "raw_edges", std::to_string(loaded.stats.raw_edges));
    WriteMetricRow(out, "self_loops_dropped", std::to_string(loaded.stats.self_loops_dropped));
    WriteMetricRow(out, "duplicates_dropped", std::to_string(loaded.stats.duplicates_dropped));
    WriteMetricRow(out, "nodes_with_edges", std::to_string(loaded.nodes_with_edges));
    Close(out, "graph.csv");
  }
  if (metrics.degree) {
    auto out = manifest.Open("degree.csv");
    WriteDegreeCsv(DegreeHistogram(g), out);
    Close(out, "degree.csv");
  }
  if (metrics.cc || metrics.triangles) {
    const auto counts = CountTrianglesWedges(g, ctx.threads);
    const auto profile = ComputeClusteringProfile(g, counts);
    if (metrics.cc) {
      auto out = manifest.Open("cc.csv");
      out << "degree,mean_cc,node_count\n";
      std::uint64_t centred = 0;
      for (const auto& row : profile.by_degree) centred += row.node_count;
      out << "all," << FormatDouble(profile.global_cc) << ',' << centred << '\n';
      for (const auto& row : profile.by_degree) {
        out << row.degree << ',' << FormatDouble(row.mean_cc) << ',' << row.node_count << '\n';
      }
      Close(out, "cc.csv");
    }
    if (metrics.triangles) {
      auto out = manifest.Open("triangles.csv");
      out << "metric,value\n";
      WriteMetricRow(out, "triangles", std::to_string(counts.triangles));
      WriteMetricRow(out, "wedges", std::to_string(counts.wedges));
      WriteMetricRow(out, "global_cc", FormatDouble(profile.global_cc));
      WriteMetricRow(out, "kk_holds",
                     KruskalKatonaCheck(counts.triangles, g.num_edges()) ? "1" : "0");
      Close(out, "triangles.csv");
    }
  }
  int code = kExitOk;
  if (metrics.spectrum) {
    SpectrumOptions spectrum;
    spectrum.k = std::min<std::size_t>(o.top_k, g.num_nodes());
    spectrum.tolerance = o.tolerance;
    spectrum.seed = o.spectrum_seed;
    spectrum.threads = ctx.threads;
    SpectrumReport report;
    try {
      report = TopEigenvalues(g, spectrum);
    } catch (const ConvergenceError& e) {
      report = e.partial();
      *ctx.err << "error: " << e.what() << " (partial spectrum written)\n";
      code = kExitNoConvergence;
    }
    auto out = manifest.Open("spectrum.csv");
    WriteSpectrumCsv(report, out);
    Close(out, "spectrum.csv");
  }
  manifest.Write(dir / "manifest.json", code);
  if (code == kExitOk) {
    *ctx.out << "analyzed " << g.num_nodes() << " nodes, " << g.num_edges()
             << " edges into " << o.out_dir << '\n';
  }
  return code;
}

// ----------------------------------------------------------------- compare

namespace {

std::vector<std::vector<std::string>> ReadCsvRows(const fs::path& path, std::string_view header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string_view view = Trim(line);
    if (view.empty()) continue;
    if (first) {
      first = false;
      if (view != header) {
        throw InputError(path.string() + ": expected header \"" + std::string(header) + "\"");
      }
      continue;
    }
    rows.push_back(SplitList(view));
  }
  return rows;
}

double CsvDouble(const std::string& text, const fs::path& path) {
  auto v = ParseDouble(text);
  if (!v) throw InputError(path.string() + ": bad number \"" + text + "\"");
  return *v;
}

std::uint64_t CsvUint(const std::string& text, const fs::path& path) {
  auto v = ParseUint(text);
  if (!v) throw InputError(path.string() + ": bad integer \"" + text + "\"");
  return *v;
}

MetricsReport LoadReportDir(const fs::path& dir, const MetricSet& metrics) {
  MetricsReport report;
  {
    const fs::path path = dir / "degree.csv";
    std::map<std::uint32_t, std::uint64_t> counts;
    for (const auto& row : ReadCsvRows(path, "degree,count")) {
      if (row.size() != 2) throw InputError(path.string() + ": expected two columns");
      const auto d = CsvUint(row[0], path);
      if (d > UINT32_MAX) throw InputError(path.string() + ": degree out of range");
      counts[static_cast<std::uint32_t>(d)] += CsvUint(row[1], path);
    }
    report.degrees = DegreeDistribution(std::move(counts));
  }
  if (metrics.cc) {
    const fs::path path = dir / "cc.csv";
    for (const auto& row : ReadCsvRows(path, "degree,mean_cc,node_count")) {
      if (row.size() != 3) throw InputError(path.string() + ": expected three columns");
      if (row[0] == "all") {
        report.global_cc = CsvDouble(row[1], path);
        continue;
      }
      report.clustering_by_degree.push_back(
          {static_cast<std::uint32_t>(CsvUint(row[0], path)), CsvDouble(row[1], path),
           CsvUint(row[2], path)});
    }
    if (!report.global_cc) throw InputError(path.string() + ": missing the \"all\" row");
  }
  if (metrics.spectrum) {
    const fs::path path = dir / "spectrum.csv";
    SpectrumReport spectrum;
    for (const auto& row : ReadCsvRows(path, "rank,eigenvalue,residual")) {
      if (row.size() != 3) throw InputError(path.string() + ": expected three columns");
      spectrum.eigenvalues.push_back(CsvDouble(row[1], path));
      spectrum.residuals.push_back(CsvDouble(row[2], path));
    }
    spectrum.k = spectrum.eigenvalues.size();
    report.spectrum = std::move(spectrum);
  }
  return report;
}

}  // namespace

int Compare(const CompareOptions& o, const RunContext& ctx) {
  if (o.out.empty()) throw ConfigError("--out is required");
  const bool from_graphs = !o.graphs.empty();
  if (from_graphs == !o.reports.empty() ||
      (from_graphs ? o.graphs.size() : o.reports.size()) != 2) {
    throw ConfigError("give exactly two --graph inputs or exactly two --report directories");
  }
  MetricSet metrics = ParseMetrics(o.metrics);
  if (metrics.triangles) throw ConfigError("compare supports degree, cc and spectrum");
  metrics.degree = true;

  Manifest manifest("compare", ctx, "--out");
  const fs::path out_path = o.out;
  const fs::path base = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  if (!fs::is_directory(base)) throw InputError("output directory " + base.string() + " does not exist");
  manifest.SetBaseDir(base);
  json& config = manifest.config();
  config["metrics"] = o.metrics;
  config["cc_floor"] = o.cc_floor;

  std::vector<MetricsReport> reports;
  if (from_graphs) {
    config["top_k"] = o.top_k;
    config["tolerance"] = o.tolerance;
    config["spectrum_seed"] = o.spectrum_seed;
    for (const auto& path : o.graphs) {
      manifest.AddInput("graph", path);
      ReportOptions options;
      options.clustering = metrics.cc;
      options.spectrum = metrics.spectrum;
      options.spectrum_options.k = o.top_k;
      options.spectrum_options.tolerance = o.tolerance;
      options.spectrum_options.seed = o.spectrum_seed;
      options.spectrum_options.threads = ctx.threads;
      options.threads = ctx.threads;
      reports.push_back(ComputeReport(ReadSnapEdgeList(path).graph, options));
    }
  } else {
    for (const auto& dir : o.reports) {
      for (const char* name : {"degree.csv", "cc.csv", "spectrum.csv"}) {
        if (fs::exists(fs::path(dir) / name)) manifest.AddInput(name, fs::path(dir) / name);
      }
      reports.push_back(LoadReportDir(dir, metrics));
    }
  }

  const ReportDivergence div = CompareReports(reports[0], reports[1], o.cc_floor);
  const std::string name = out_path.filename().string();
  {
    auto out = manifest.Open(name);
    out << "metric,value\n";
    WriteMetricRow(out, "degree_tv", FormatDouble(div.degree_tv));
    if (div.global_cc_gap) WriteMetricRow(out, "global_cc_gap", FormatDouble(*div.global_cc_gap));
    if (div.cc_by_degree_max_gap) {
      WriteMetricRow(out, "cc_by_degree_max_gap", FormatDouble(*div.cc_by_degree_max_gap));
    }
    if (div.eigen_max_rel_gap) {
      WriteMetricRow(out, "eigen_max_rel_gap", FormatDouble(*div.eigen_max_rel_gap));
      for (std::size_t i = 0; i < div.eigen_rel_gaps.size(); ++i) {
        WriteMetricRow(out, "eigen_rel_gap_" + std::to_string(i + 1),
                       FormatDouble(div.eigen_rel_gaps[i]));
      }
    }
    Close(out, name);
  }
  manifest.Write(base / (name + ".manifest.json"), kExitOk);
  *ctx.out << "wrote " << o.out << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- audit

namespace {

std::string CoreColumn(double c) {
  std::string text = FormatDouble(c);
  if (text.find('.') == std::string::npos) text += "0";
  text.erase(std::remove(text.begin(), text.end(), '.'), text.end());
  return "core_c" + text;
}

// Reads node ids verbatim; the node count is the largest of --nodes, the
// largest id + 1 and `at_least`.
LoadedGraph ReadVerbatim(const std::string& path, std::optional<NodeId> nodes) {
  if (nodes) {
    EdgeListReadOptions read;
    read.num_nodes = nodes;
    return ReadSnapEdgeList(path, read);
  }
  LoadedGraph compact = ReadSnapEdgeList(path);
  if (compact.original_ids.empty()) return compact;
  if (compact.original_ids.back() > UINT32_MAX - 2) {
    throw InputError(path + ": node ids exceed the supported range");
  }
  std::vector<Edge> edges;
  edges.reserve(compact.graph.num_edges());
  for (const Edge& e : compact.graph.edges()) {
    edges.push_back({static_cast<NodeId>(compact.original_ids[e.u]),
                     static_cast<NodeId>(compact.original_ids[e.v])});
  }
  const auto n = static_cast<NodeId>(compact.original_ids.back() + 1);
  LoadedGraph verbatim;
  verbatim.graph = BuildGraph(n, edges).graph;
  verbatim.stats = compact.stats;
  verbatim.data_lines = compact.data_lines;
  verbatim.nodes_with_edges = compact.nodes_with_edges;
  verbatim.original_ids.resize(n);
  for (NodeId i = 0; i < n; ++i) verbatim.original_ids[i] = i;
  return verbatim;
}

}  // namespace

int Audit(const AuditOptions& o, const RunContext& ctx) {
  if (o.graph_path.empty()) throw ConfigError("--graph is required");
  if (!(o.kappa > 0.0 && o.kappa < 1.0)) throw ConfigError("--kappa must lie in (0, 1)");
  std::vector<double> cores;
  for (const auto& part : SplitList(o.cores)) {
    const double c = RequireDouble(part, "--cores");
    if (!(c > 0.0)) throw ConfigError("--cores values must be positive");
    cores.push_back(c);
  }
  std::optional<std::pair<double, double>> predict;
  if (!o.predict.empty()) {
    std::optional<double> n, gamma;
    for (const auto& part : SplitList(o.predict)) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ConfigError("--predict expects n=...,gamma=...");
      const std::string key(Trim(std::string_view(part).substr(0, eq)));
      const double value = RequireDouble(std::string_view(part).substr(eq + 1), "--predict " + key);
      if (key == "n") n = value;
      else if (key == "gamma") gamma = value;
      else throw ConfigError("--predict: unknown key \"" + key + "\"");
    }
    if (!n || !gamma) throw ConfigError("--predict needs both n and gamma");
    predict = {{*n, *gamma}};
  }

  const fs::path dir = PrepareOutDir(o.out_dir);
  Manifest manifest("audit", ctx, "--out-dir");
  manifest.SetBaseDir(dir);
  manifest.AddInput("graph", o.graph_path);
  json& config = manifest.config();
  config["kappa"] = o.kappa;
  config["cores"] = cores;
  if (predict) config["predict"] = {{"n", predict->first}, {"gamma", predict->second}};

  std::optional<std::uint64_t> nodes = o.nodes;
  std::string partition_path = o.partition_path;
  if (!o.manifest_path.empty()) {
    if (!partition_path.empty()) throw ConfigError("give --manifest or --partition, not both");
    std::ifstream in(o.manifest_path);
    if (!in) throw InputError("cannot read " + o.manifest_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(o.manifest_path + ": " + e.what());
    }
    manifest.AddInput("manifest", o.manifest_path);
    if (!doc.contains("nodes") || !doc.contains("outputs")) {
      throw InputError(o.manifest_path + " is not a generate manifest");
    }
    if (!nodes) nodes = doc["nodes"].get<std::uint64_t>();
    for (const auto& out : doc["outputs"]) {
      const std::string file = out["file"].get<std::string>();
      if (file.size() > 14 && file.ends_with(".partition.csv")) {
        partition_path = (fs::path(o.manifest_path).parent_path() / file).string();
      }
    }
    if (partition_path.empty()) {
      throw InputError(o.manifest_path + " lists no partition (not a bter run)");
    }
  }
  if (nodes) config["nodes"] = *nodes;

  const LoadedGraph loaded = partition_path.empty()
                                 ? ReadSnapEdgeList(o.graph_path, {.num_nodes = NodeCount(nodes)})
                                 : ReadVerbatim(o.graph_path, NodeCount(nodes));
  const Graph& g = loaded.graph;
  const auto counts = CountTrianglesWedges(g, ctx.threads);
  const bool kk = KruskalKatonaCheck(counts.triangles, g.num_edges());
  {
    auto out = manifest.Open("kk.csv");
    out << "metric,value\n";
    WriteMetricRow(out, "nodes", std::to_string(g.num_nodes()));
    WriteMetricRow(out, "edges", std::to_string(g.num_edges()));
    WriteMetricRow(out, "triangles", std::to_string(counts.triangles));
    WriteMetricRow(out, "kk_bound", FormatDouble(std::pow(double(g.num_edges()), 1.5)));
    WriteMetricRow(out, "kk_holds", kk ? "1" : "0");
    Close(out, "kk.csv");
  }

  std::map<std::uint64_t, std::uint64_t> realized_sizes;
  std::uint64_t blocks = 0, passing = 0;
  if (!partition_path.empty()) {
    manifest.AddInput("partition", partition_path);
    std::ifstream in(partition_path);
    if (!in) throw InputError("cannot read " + partition_path);
    const PartitionMembership membership = ParsePartitionCsv(in);
    if (membership.max_node_plus_one > g.num_nodes()) {
      throw InputError("partition references node " +
                       std::to_string(membership.max_node_plus_one - 1) + " but the graph has " +
                       std::to_string(g.num_nodes()) + " nodes (pass --nodes)");
    }
    std::vector<std::int64_t> block_of(g.num_nodes(), -1);
    for (std::size_t k = 0; k < membership.members.size(); ++k) {
      for (NodeId v : membership.members[k]) block_of[v] = static_cast<std::int64_t>(k);
    }
    auto out = manifest.Open("audit.csv");
    out << "block,s,expected_triangles,wedge_threshold,passes";
    for (double c : cores) out << ',' << CoreColumn(c);
    out << ",exact,side_condition_ratio\n";
    for (std::size_t k = 0; k < membership.members.size(); ++k) {
      const auto& members = membership.members[k];
      ++realized_sizes[members.size()];
      std::vector<std::uint32_t> internal;
      for (NodeId v : members) {
        std::uint32_t d = 0;
        for (NodeId w : g.neighbors(v)) d += block_of[w] == static_cast<std::int64_t>(k);
        if (d > 0) internal.push_back(d);
      }
      ++blocks;
      out << k << ',';
      if (internal.empty()) {
        // No internal edge: nothing to expect and nothing to beat.
        out << "0,0,0,0";
        for (std::size_t i = 0; i < cores.size(); ++i) out << ",0";
        out << ",1,0\n";
        continue;
      }
      const CommunityAudit audit = AuditCommunity(internal, o.kappa, cores, ctx.threads);
      passing += audit.passes;
      out << FormatDouble(audit.s) << ',' << FormatDouble(audit.expected_triangles) << ','
          << FormatDouble(audit.wedge_threshold) << ',' << (audit.passes ? 1 : 0);
      for (const auto& core : audit.cores) out << ',' << core.count;
      out << ',' << (audit.exact ? 1 : 0) << ',' << FormatDouble(audit.side_condition_ratio)
          << '\n';
    }
    Close(out, "audit.csv");
  }

  std::optional<CommunityProfile> profile;
  if (predict) {
    profile = PredictCommunityProfile(predict->first, predict->second);
    auto out = manifest.Open("predict.csv");
    const bool realized = !partition_path.empty();
    out << "size,predicted_count" << (realized ? ",realized_count" : "") << '\n';
    std::uint64_t top = profile->max_size;
    if (realized && !realized_sizes.empty()) top = std::max(top, realized_sizes.rbegin()->first);
    for (std::uint64_t d = 1; d <= top; ++d) {
      out << d << ',' << FormatDouble(d <= profile->max_size ? profile->counts[d - 1] : 0.0);
      if (realized) {
        auto it = realized_sizes.find(d);
        out << ',' << (it == realized_sizes.end() ? 0 : it->second);
      }
      out << '\n';
    }
    Close(out, "predict.csv");
  }

  {
    auto out = manifest.Open("audit_summary.csv");
    out << "metric,value\n";
    WriteMetricRow(out, "kk_holds", kk ? "1" : "0");
    if (!partition_path.empty()) {
      WriteMetricRow(out, "blocks", std::to_string(blocks));
      WriteMetricRow(out, "passing", std::to_string(passing));
      WriteMetricRow(out, "pass_fraction",
                     FormatDouble(blocks ? double(passing) / double(blocks) : 0.0));
    }
    if (profile) WriteMetricRow(out, "predicted_max_size", std::to_string(profile->max_size));
    Close(out, "audit_summary.csv");
  }
  manifest.Write(dir / "manifest.json", kExitOk);
  *ctx.out << "audit written to " << o.out_dir << '\n';
  return kExitOk;
}

}  // namespace bter::cli
