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

#ifndef BTER_DEGREE_H_
#define BTER_DEGREE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "bter/graph.h"

namespace bter {

// Target degrees d_1 <= d_2 <= ... <= d_n, all >= 1, n >= 1. Node i of a
// generated graph gets target degrees()[i].
class DegreeSequence {
 public:
  // Sorts the input. Throws ConfigError if it is empty or contains a zero.
  static DegreeSequence FromDegrees(std::vector<std::uint32_t> degrees);

  std::span<const std::uint32_t> degrees() const { return degrees_; }
  std::uint32_t operator[](std::size_t i) const { return degrees_[i]; }
  std::size_t size() const { return degrees_.size(); }
  std::uint32_t max_degree() const { return degrees_.back(); }
  // Sum of target degrees, i.e. 2m.
  std::uint64_t total() const { return total_; }

  friend bool operator==(const DegreeSequence&,
                         const DegreeSequence&) = default;

 private:
  std::vector<std::uint32_t> degrees_;
  std::uint64_t total_ = 0;
};

// Histogram form: degree -> number of nodes with that degree. Only positive
// counts are stored. Degree 0 is allowed here (realized graphs can have
// isolated nodes) but cannot be realized into a DegreeSequence.
class DegreeDistribution {
 public:
  DegreeDistribution() = default;
  explicit DegreeDistribution(std::map<std::uint32_t, std::uint64_t> counts);

  const std::map<std::uint32_t, std::uint64_t>& counts() const {
    return counts_;
  }
  std::uint64_t num_nodes() const { return num_nodes_; }
  std::uint64_t count(std::uint32_t degree) const;

  // Expands the histogram to a sorted sequence. Throws ConfigError when the
  // distribution is empty or holds degree 0.
  DegreeSequence Realize() const;

  friend bool operator==(const DegreeDistribution&,
                         const DegreeDistribution&) = default;

 private:
  std::map<std::uint32_t, std::uint64_t> counts_;
  std::uint64_t num_nodes_ = 0;
};

// Sorted degrees of the non-isolated nodes of g (isolated nodes have no
// target degree to carry into a model). Throws ConfigError if g has no
// edges.
DegreeSequence ExtractDegrees(const Graph& g);

DegreeDistribution Histogram(const DegreeSequence& seq);

// Histogram over every node of g, isolated nodes included as degree 0.
DegreeDistribution DegreeHistogram(const Graph& g);

// Counts X_d proportional to d^-gamma for d = 1..d_max, apportioned by the
// largest-remainder method so they sum to exactly n. Remainder ties go to
// the smaller degree, which keeps X_d non-increasing.
DegreeDistribution PowerLawCounts(std::uint64_t n, double gamma,
                                  std::uint32_t d_max);
DegreeSequence SynthesizePowerLaw(std::uint64_t n, double gamma,
                                  std::uint32_t d_max);

// Total-variation distance between the normalized histograms.
double TotalVariation(const DegreeDistribution& a, const DegreeDistribution& b);

// Degree files: either a "degree,count" CSV or one integer per line.
DegreeSequence ParseDegreeFile(std::istream& in);
DegreeSequence ReadDegreeFile(const std::filesystem::path& path);
void WriteDegreeCsv(const DegreeDistribution& dist, std::ostream& out);

}  // namespace bter

#endif  // BTER_DEGREE_H_
