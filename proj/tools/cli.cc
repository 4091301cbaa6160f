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

#include "cli.h"

#include <stdlib.h>
#include <unistd.h>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bter/errors.h"
#include "bter/spectrum.h"
#include "commands.h"
#include "digest.h"
#include "json.hpp"

namespace bter::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Drops "--threads N" and "--threads=N" so manifests do not depend on them.
std::vector<std::string> StripThreads(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--threads") {
      ++i;
      continue;
    }
    if (args[i].starts_with("--threads=")) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

void AddThreads(CLI::App* sub, int& threads) {
  sub->add_option("--threads", threads, "Worker threads (0: hardware concurrency)")
      ->envname("BTER_THREADS")
      ->check(CLI::NonNegativeNumber);
}

class ScopedCwd {
 public:
  explicit ScopedCwd(const fs::path& dir) : saved_(fs::current_path()) {
    fs::current_path(dir);
  }
  ~ScopedCwd() {
    std::error_code ec;
    fs::current_path(saved_, ec);
  }

 private:
  fs::path saved_;
};

class TempDir {
 public:
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "bter_replay_XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw InputError("cannot create a temporary directory");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int Replay(const std::string& manifest_path, int threads, std::ostream& out,
           std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw InputError("cannot read " + manifest_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(manifest_path + ": " + e.what());
  }
  std::vector<std::string> argv;
  std::string flag, cwd;
  try {
    if (doc.at("tool") != kToolName) throw InputError(manifest_path + " was not written by " + kToolName);
    argv = doc.at("argv").get<std::vector<std::string>>();
    flag = doc.at("output_flag").get<std::string>();
    cwd = doc.at("cwd").get<std::string>();
    doc.at("outputs");
    doc.at("inputs");
  } catch (const json::exception& e) {
    throw InputError(manifest_path + ": " + e.what());
  }
  if (doc["version"] != kToolVersion) {
    err << "warning: manifest written by version " << doc["version"].dump() << '\n';
  }

  for (const auto& input : doc["inputs"]) {
    const std::string path = input.at("path").get<std::string>();
    const std::string digest = Sha256File(path);
    if (digest != input.at("sha256").get<std::string>()) {
      throw InputError("input " + path + " changed since the manifest was written");
    }
  }

  TempDir temp;
  bool substituted = false;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    std::string* value = nullptr;
    std::string prefix;
    if (argv[i] == flag && i + 1 < argv.size()) {
      value = &argv[++i];
    } else if (argv[i].starts_with(flag + "=")) {
      value = &argv[i];
      prefix = flag + "=";
    }
    if (!value) continue;
    const std::string old = value->substr(prefix.size());
    const fs::path replaced =
        flag == "--out" ? temp.path() / fs::path(old).filename() : temp.path();
    *value = prefix + replaced.string();
    substituted = true;
  }
  if (!substituted) throw InputError(manifest_path + ": output flag " + flag + " not found in argv");
  argv.push_back("--threads");
  argv.push_back(std::to_string(threads));

  int code;
  {
    ScopedCwd scoped(cwd);
    std::ostringstream quiet;
    code = Run(argv, quiet, err);
  }
  if (doc.contains("exit_code") && code != doc["exit_code"].get<int>()) {
    out << "MISMATCH exit code " << code << " (recorded " << doc["exit_code"] << ")\n";
    return kExitMismatch;
  }

  bool all = true;
  for (const auto& output : doc["outputs"]) {
    const std::string file = output.at("file").get<std::string>();
    const fs::path produced = temp.path() / file;
    const bool match = fs::exists(produced) &&
                       Sha256File(produced) == output.at("sha256").get<std::string>();
    out << (match ? "MATCH " : "MISMATCH ") << file << '\n';
    all = all && match;
  }
  return all ? kExitOk : kExitMismatch;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"BTER graph generator and analysis toolkit", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int threads = 0;

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a graph");
  generate->add_option("--model", gen.model, "bter, cl or er")
      ->check(CLI::IsMember({"bter", "cl", "er"}));
  generate->add_option("--degrees", gen.degrees_path, "Degree file");
  generate->add_option("--from-graph", gen.graph_path, "Take degrees from an edge list");
  generate->add_option("--powerlaw", gen.powerlaw, "Synthetic degrees: n,gamma,dmax");
  generate->add_option("--n", gen.er_nodes, "Node count (er)");
  generate->add_option("--p", gen.er_p, "Edge probability (er)");
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--config", gen.config_path, "key = value parameter file");
  generate->add_option("--rho", gen.rho, "Connectivity at the smallest blocks");
  generate->add_option("--eta", gen.eta, "Connectivity decay");
  generate->add_option("--variant", gen.variant, "standard or cubic");
  generate->add_option("--manual-fraction", gen.manual_fraction,
                       "Fraction of degree-1 nodes handled by hand");
  generate->add_option("--d1-weight", gen.d1_weight, "Excess weight of other degree-1 nodes");
  generate->add_option("--q", gen.q, "Pairs among hand-handled degree-1 nodes (even)");
  generate->add_option("--beta", gen.beta, "Offset added to the excess scale factor");
  generate->add_option("--cl-mode", gen.cl_mode, "auto, exact or fast")
      ->check(CLI::IsMember({"auto", "exact", "fast"}));
  generate->add_option("--out", gen.out, "Output edge list")->required();
  AddThreads(generate, threads);

  AnalyzeOptions ana;
  auto* analyze = app.add_subcommand("analyze", "Measure a graph");
  analyze->add_option("--graph", ana.graph_path, "Edge list")->required();
  analyze->add_option("--nodes", ana.nodes, "Use ids verbatim with this node count");
  analyze->add_option("--metrics", ana.metrics, "Comma list of degree, cc, triangles, spectrum")
      ->capture_default_str();
  analyze->add_option("--top-k", ana.top_k, "Eigenvalues to compute")->capture_default_str();
  analyze->add_option("--tol", ana.tolerance, "Eigenvalue residual tolerance")
      ->capture_default_str();
  analyze->add_option("--spectrum-seed", ana.spectrum_seed, "Lanczos start vector seed");
  analyze->add_option("--out-dir", ana.out_dir, "Output directory")->required();
  AddThreads(analyze, threads);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Compare two graphs or two reports");
  compare->add_option("--graph", cmp.graphs, "Edge list (twice)");
  compare->add_option("--report", cmp.reports, "analyze output directory (twice)");
  compare->add_option("--metrics", cmp.metrics, "Comma list of degree, cc, spectrum")
      ->capture_default_str();
  compare->add_option("--top-k", cmp.top_k, "Eigenvalues to compare")->capture_default_str();
  compare->add_option("--tol", cmp.tolerance, "Eigenvalue residual tolerance");
  compare->add_option("--spectrum-seed", cmp.spectrum_seed, "Lanczos start vector seed");
  compare->add_option("--cc-floor", cmp.cc_floor,
                      "Minimum nodes per degree on both sides for the by-degree gap")
      ->capture_default_str();
  compare->add_option("--out", cmp.out, "Output CSV")->required();
  AddThreads(compare, threads);

  AuditOptions aud;
  auto* audit = app.add_subcommand("audit", "Check triangle and community criteria");
  audit->add_option("--graph", aud.graph_path, "Edge list")->required();
  audit->add_option("--nodes", aud.nodes, "Node count; ids are used verbatim");
  audit->add_option("--partition", aud.partition_path, "Partition CSV from generate");
  audit->add_option("--manifest", aud.manifest_path, "Manifest of a bter generate run");
  audit->add_option("--kappa", aud.kappa, "Wedge threshold constant")->capture_default_str();
  audit->add_option("--cores", aud.cores, "Core constants")->capture_default_str();
  audit->add_option("--predict", aud.predict, "Community-size prediction: n=...,gamma=...");
  audit->add_option("--out-dir", aud.out_dir, "Output directory")->required();
  AddThreads(audit, threads);

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  replay->add_option("--manifest", manifest_path, "Manifest to replay")
      ->required();
  AddThreads(replay, threads);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunContext ctx;
  ctx.argv = StripThreads(args);
  ctx.threads = threads;
  ctx.out = &out;
  ctx.err = &err;
  try {
    if (*generate) return Generate(gen, ctx);
    if (*analyze) return Analyze(ana, ctx);
    if (*compare) return Compare(cmp, ctx);
    if (*audit) return Audit(aud, ctx);
    return Replay(manifest_path, threads, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
}

}  // namespace bter::cli
