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

#include "bter/degree.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "bter/errors.h"
#include "bter/format.h"

namespace bter {

DegreeSequence DegreeSequence::FromDegrees(std::vector<std::uint32_t> degrees) {
  if (degrees.empty()) throw ConfigError("degree sequence is empty");
  std::sort(degrees.begin(), degrees.end());
  if (degrees.front() == 0) {
    throw ConfigError("degree sequence contains a zero degree");
  }
  DegreeSequence seq;
  seq.total_ = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  seq.degrees_ = std::move(degrees);
  return seq;
}

DegreeDistribution::DegreeDistribution(
    std::map<std::uint32_t, std::uint64_t> counts) {
  for (auto it = counts.begin(); it != counts.end();) {
    if (it->second == 0) {
      it = counts.erase(it);
    } else {
      num_nodes_ += it->second;
      ++it;
    }
  }
  counts_ = std::move(counts);
}

std::uint64_t DegreeDistribution::count(std::uint32_t degree) const {
  auto it = counts_.find(degree);
  return it == counts_.end() ? 0 : it->second;
}

DegreeSequence DegreeDistribution::Realize() const {
  std::vector<std::uint32_t> degrees;
  degrees.reserve(num_nodes_);
  for (const auto& [d, count] : counts_) degrees.insert(degrees.end(), count, d);
  return DegreeSequence::FromDegrees(std::move(degrees));
}

DegreeSequence ExtractDegrees(const Graph& g) {
  std::vector<std::uint32_t> degrees;
  degrees.reserve(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (g.degree(i) > 0) degrees.push_back(static_cast<std::uint32_t>(g.degree(i)));
  }
  if (degrees.empty()) throw ConfigError("graph has no edges");
  return DegreeSequence::FromDegrees(std::move(degrees));
}

DegreeDistribution Histogram(const DegreeSequence& seq) {
  std::map<std::uint32_t, std::uint64_t> counts;
  for (std::uint32_t d : seq.degrees()) ++counts[d];
  return DegreeDistribution(std::move(counts));
}

DegreeDistribution DegreeHistogram(const Graph& g) {
  std::map<std::uint32_t, std::uint64_t> counts;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    ++counts[static_cast<std::uint32_t>(g.degree(i))];
  }
  return DegreeDistribution(std::move(counts));
}

DegreeDistribution PowerLawCounts(std::uint64_t n, double gamma,
                                  std::uint32_t d_max) {
  if (n < 1) throw ConfigError("power-law synthesis needs n >= 1");
  if (d_max < 1) throw ConfigError("power-law synthesis needs d_max >= 1");
  if (!(gamma > 1.0)) throw ConfigError("power-law exponent must exceed 1");

  // Weights relative to d = 1 so that huge gamma underflows to zero mass
  // above degree 1 instead of producing NaNs.
  std::vector<double> weight(d_max);
  double total = 0;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    weight[d - 1] = std::pow(static_cast<double>(d), -gamma);
    total += weight[d - 1];
  }

  std::vector<std::uint64_t> counts(d_max);
  std::vector<std::pair<double, std::uint32_t>> remainders;
  remainders.reserve(d_max);
  std::uint64_t assigned = 0;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    const double quota = static_cast<double>(n) * weight[d - 1] / total;
    const double whole = std::floor(quota);
    counts[d - 1] = static_cast<std::uint64_t>(whole);
    assigned += counts[d - 1];
    remainders.emplace_back(quota - whole, d);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  // Floating error can leave the floors a node or two off in either
  // direction; largest remainders absorb the difference.
  for (std::size_t i = 0; assigned < n; i = (i + 1) % remainders.size()) {
    ++counts[remainders[i].second - 1];
    ++assigned;
  }
  for (std::size_t i = remainders.size(); assigned > n;) {
    i = (i == 0 ? remainders.size() : i) - 1;
    auto& c = counts[remainders[i].second - 1];
    if (c > 0) {
      --c;
      --assigned;
    }
  }

  std::map<std::uint32_t, std::uint64_t> dist;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    if (counts[d - 1] > 0) dist[d] = counts[d - 1];
  }
  return DegreeDistribution(std::move(dist));
}

DegreeSequence SynthesizePowerLaw(std::uint64_t n, double gamma,
                                  std::uint32_t d_max) {
  return PowerLawCounts(n, gamma, d_max).Realize();
}

double TotalVariation(const DegreeDistribution& a,
                      const DegreeDistribution& b) {
  const double na = static_cast<double>(a.num_nodes());
  const double nb = static_cast<double>(b.num_nodes());
  auto fa = [&](std::uint64_t c) { return na > 0 ? static_cast<double>(c) / na : 0.0; };
  auto fb = [&](std::uint64_t c) { return nb > 0 ? static_cast<double>(c) / nb : 0.0; };
  double sum = 0;
  auto ia = a.counts().begin();
  auto ib = b.counts().begin();
  while (ia != a.counts().end() || ib != b.counts().end()) {
    if (ib == b.counts().end() ||
        (ia != a.counts().end() && ia->first < ib->first)) {
      sum += fa(ia->second);
      ++ia;
    } else if (ia == a.counts().end() || ib->first < ia->first) {
      sum += fb(ib->second);
      ++ib;
    } else {
      sum += std::abs(fa(ia->second) - fb(ib->second));
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

DegreeSequence ParseDegreeFile(std::istream& in) {
  std::vector<std::uint32_t> degrees;
  std::string line;
  std::uint64_t line_number = 0;
  bool distribution_form = false;
  bool saw_data = false;
  auto fail = [&](const std::string& what) {
    throw InputError("degree file line " + std::to_string(line_number) + ": " +
                     what);
  };
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!saw_data && view == "degree,count") {
      distribution_form = true;
      saw_data = true;
      continue;
    }
    saw_data = true;
    if (distribution_form) {
      const auto comma = view.find(',');
      if (comma == std::string_view::npos) fail("expected \"degree,count\"");
      auto d = ParseUint(Trim(view.substr(0, comma)));
      auto c = ParseUint(Trim(view.substr(comma + 1)));
      if (!d || !c || *d == 0 || *d > UINT32_MAX) fail("bad degree/count pair");
      degrees.insert(degrees.end(), *c, static_cast<std::uint32_t>(*d));
    } else {
      auto d = ParseUint(view);
      if (!d || *d == 0 || *d > UINT32_MAX) fail("expected a positive integer");
      degrees.push_back(static_cast<std::uint32_t>(*d));
    }
  }
  if (degrees.empty()) throw InputError("degree file holds no degrees");
  return DegreeSequence::FromDegrees(std::move(degrees));
}

DegreeSequence ReadDegreeFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return ParseDegreeFile(in);
}

void WriteDegreeCsv(const DegreeDistribution& dist, std::ostream& out) {
  out << "degree,count\n";
  for (const auto& [d, count] : dist.counts()) out << d << ',' << count << '\n';
}

}  // namespace bter
