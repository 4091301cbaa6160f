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

#include "bter/edgelist_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "bter/errors.h"
#include "bter/format.h"

namespace bter {
namespace {

// Splits a line into whitespace-separated tokens; returns false if there
// are not exactly two.
bool SplitPair(std::string_view line, std::string_view& first,
               std::string_view& second) {
  std::string_view tokens[3];
  int count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (count == 3) return false;
    tokens[count++] = line.substr(pos, end - pos);
    pos = end;
  }
  if (count != 2) return false;
  first = tokens[0];
  second = tokens[1];
  return true;
}

}  // namespace

LoadedGraph ParseSnapEdgeList(std::istream& in,
                              const EdgeListReadOptions& options) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::uint64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    std::string_view a, b;
    std::optional<std::uint64_t> u, v;
    if (SplitPair(view, a, b)) {
      u = ParseUint(a);
      v = ParseUint(b);
    }
    if (!u || !v) {
      throw InputError("line " + std::to_string(line_number) +
                       ": expected two non-negative integer ids, got \"" +
                       std::string(view) + "\"");
    }
    raw.emplace_back(*u, *v);
  }
  if (in.bad()) throw InputError("read failure on edge list stream");

  LoadedGraph loaded;
  loaded.data_lines = raw.size();

  std::vector<Edge> stream;
  stream.reserve(raw.size());
  NodeId n = 0;
  if (options.num_nodes) {
    n = *options.num_nodes;
    for (const auto& [u, v] : raw) {
      if (u >= n || v >= n) {
        throw InputError("edge (" + std::to_string(u) + ", " +
                         std::to_string(v) + ") exceeds node count " +
                         std::to_string(n));
      }
      stream.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    loaded.original_ids.resize(n);
    for (NodeId i = 0; i < n; ++i) loaded.original_ids[i] = i;
  } else {
    std::vector<std::uint64_t>& ids = loaded.original_ids;
    ids.reserve(2 * raw.size());
    for (const auto& [u, v] : raw) {
      ids.push_back(u);
      ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > std::numeric_limits<NodeId>::max()) {
      throw InputError("too many distinct node ids");
    }
    auto compact = [&ids](std::uint64_t id) {
      return static_cast<NodeId>(
          std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const auto& [u, v] : raw) stream.push_back({compact(u), compact(v)});
    n = static_cast<NodeId>(ids.size());
  }

  auto built = BuildGraph(n, stream);
  loaded.graph = std::move(built.graph);
  loaded.stats = built.stats;
  for (NodeId i = 0; i < n; ++i) {
    if (loaded.graph.degree(i) > 0) ++loaded.nodes_with_edges;
  }
  return loaded;
}

LoadedGraph ReadSnapEdgeList(const std::filesystem::path& path,
                             const EdgeListReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return ParseSnapEdgeList(in, options);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  std::string buffer;
  for (const Edge& e : g.edges()) {
    buffer += std::to_string(e.u);
    buffer += ' ';
    buffer += std::to_string(e.v);
    buffer += '\n';
    if (buffer.size() > (1 << 16)) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
}

void WriteEdgeList(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  WriteEdgeList(g, out);
  if (!out) throw InputError("write failure on " + path.string());
}

}  // namespace bter
