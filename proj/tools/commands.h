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

#ifndef BTER_TOOLS_COMMANDS_H_
#define BTER_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bter::cli {

inline constexpr char kToolName[] = "bter_cli";
inline constexpr char kToolVersion[] = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitNoConvergence = 4;

struct RunContext {
  // Arguments after the program name with any --threads setting removed;
  // recorded in manifests.
  std::vector<std::string> argv;
  int threads = 0;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

struct GenerateOptions {
  std::string model = "bter";
  std::string degrees_path;
  std::string graph_path;
  std::string powerlaw;  // "n,gamma,dmax"
  std::optional<std::uint64_t> er_nodes;
  std::optional<double> er_p;
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::optional<double> rho;
  std::optional<double> eta;
  std::string variant;
  std::optional<double> manual_fraction;
  std::optional<double> d1_weight;
  std::optional<std::uint64_t> q;
  std::optional<double> beta;
  std::string cl_mode = "auto";
  std::string out;
};

struct AnalyzeOptions {
  std::string graph_path;
  std::optional<std::uint64_t> nodes;
  std::string metrics = "degree,cc,triangles,spectrum";
  std::size_t top_k = 25;
  double tolerance = 1e-8;
  std::uint64_t spectrum_seed = 0;
  std::string out_dir;
};

struct CompareOptions {
  std::vector<std::string> graphs;
  std::vector<std::string> reports;
  std::string metrics = "degree,cc,spectrum";
  std::size_t top_k = 25;
  double tolerance = 1e-8;
  std::uint64_t spectrum_seed = 0;
  std::uint64_t cc_floor = 1;
  std::string out;
};

struct AuditOptions {
  std::string graph_path;
  std::optional<std::uint64_t> nodes;
  std::string partition_path;
  std::string manifest_path;
  double kappa = 0.1;
  std::string cores = "0.25,0.5,1.0";
  std::string predict;  // "n=...,gamma=..."
  std::string out_dir;
};

int Generate(const GenerateOptions& options, const RunContext& ctx);
int Analyze(const AnalyzeOptions& options, const RunContext& ctx);
int Compare(const CompareOptions& options, const RunContext& ctx);
int Audit(const AuditOptions& options, const RunContext& ctx);

}  // namespace bter::cli

#endif  // BTER_TOOLS_COMMANDS_H_
