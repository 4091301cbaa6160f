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

#include "bter/theory.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bter/errors.h"
#include "bter/parallel.h"

namespace bter {
namespace {

void CheckDegrees(std::span<const std::uint32_t> degrees) {
  if (degrees.empty()) throw ConfigError("degree list is empty");
  if (std::find(degrees.begin(), degrees.end(), 0u) != degrees.end()) {
    throw ConfigError("degrees must be positive");
  }
}

}  // namespace

double ClTriangleBound(std::span<const std::uint32_t> degrees) {
  CheckDegrees(degrees);
  double sum = 0, sum_sq = 0;
  for (std::uint32_t d : degrees) {
    sum += d;
    sum_sq += static_cast<double>(d) * d;
  }
  const double s = sum / 2.0;
  return sum_sq * sum_sq * sum_sq / (8.0 * s * s * s);
}

ExpectedTriangles ClExpectedTriangles(std::span<const std::uint32_t> degrees,
                                      int threads) {
  CheckDegrees(degrees);
  const std::size_t r = degrees.size();
  if (r > kExactTriangleLimit) return {ClTriangleBound(degrees), false};

  const double two_s =
      std::accumulate(degrees.begin(), degrees.end(), 0.0,
                      [](double acc, std::uint32_t d) { return acc + d; });
  std::vector<double> prob(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      prob[i * r + j] =
          std::min(1.0, static_cast<double>(degrees[i]) * degrees[j] / two_s);
    }
  }
  std::vector<double> partial(r, 0.0);
  ParallelFor(r, threads, [&](std::size_t i, int) {
    double sum = 0;
    for (std::size_t j = i + 1; j < r; ++j) {
      const double pij = prob[i * r + j];
      double inner = 0;
      for (std::size_t k = j + 1; k < r; ++k) {
        inner += prob[j * r + k] * prob[i * r + k];
      }
      sum += pij * inner;
    }
    partial[i] = sum;
  });
  double total = 0;
  for (double x : partial) total += x;
  return {total, true};
}

bool KruskalKatonaCheck(std::uint64_t triangles, std::uint64_t edges) {
  using U128 = unsigned __int128;
  if (edges == 0) return triangles == 0;
  // t^2 <= m^3 as t^2 = q m + rem with q <= m^2, rem == 0 on equality;
  // t^2 and m^2 both fit in 128 bits, m^3 may not.
  const U128 t2 = static_cast<U128>(triangles) * triangles;
  const U128 m2 = static_cast<U128>(edges) * edges;
  const U128 q = t2 / edges;
  return q < m2 || (q == m2 && t2 % edges == 0);
}

CommunityAudit AuditCommunity(std::span<const std::uint32_t> internal_degrees,
                              double kappa,
                              std::span<const double> core_constants,
                              int threads) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigError("kappa must lie in (0, 1)");
  std::vector<std::uint32_t> degrees;
  for (std::uint32_t d : internal_degrees) {
    if (d > 0) degrees.push_back(d);
  }
  if (degrees.empty()) throw ConfigError("community has no internal edges");
  std::sort(degrees.begin(), degrees.end());

  CommunityAudit audit;
  audit.kappa = kappa;
  audit.s = std::accumulate(degrees.begin(), degrees.end(), 0.0) / 2.0;
  const auto expected = ClExpectedTriangles(degrees, threads);
  audit.expected_triangles = expected.value;
  audit.exact = expected.exact;
  double wedges = 0;
  for (std::uint32_t d : degrees) wedges += Choose2(d);
  audit.wedge_threshold = kappa / 3.0 * wedges;
  audit.passes = audit.expected_triangles > audit.wedge_threshold;

  const double root_s = std::sqrt(audit.s);
  for (double c : core_constants) {
    CoreCensus census;
    census.c = c;
    census.threshold = c * root_s;
    for (std::uint32_t d : degrees) {
      if (static_cast<double>(d) >= census.threshold) {
        if (census.count == 0) census.min_degree = d;
        ++census.count;
      }
    }
    audit.cores.push_back(census);
  }

  auto first_big = std::find_if(degrees.begin(), degrees.end(),
                                [](std::uint32_t d) { return d > 1; });
  if (first_big != degrees.end()) {
    const double j = static_cast<double>(first_big - degrees.begin() + 1);
    double tail = 0;
    for (auto it = first_big + 1; it != degrees.end(); ++it) {
      tail += static_cast<double>(*it) * *it;
    }
    audit.side_condition_ratio = tail / j;
  }
  return audit;
}

CommunityProfile PredictCommunityProfile(double n, double gamma) {
  if (!(n >= 1.0)) throw ConfigError("n must be >= 1");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  const double exponent = gamma + 1.0;
  // n / d^(gamma+1) >= 1  <=>  (gamma+1) log d <= log n; the log form with
  // a relative slack keeps exact powers (1e6 = 100^3) on the right side.
  const double log_n = std::log(n);
  auto fits = [&](double d) {
    return exponent * std::log(d) <= log_n * (1.0 + 1e-12) + 1e-12;
  };
  auto d = static_cast<std::uint64_t>(std::floor(std::exp(log_n / exponent)));
  d = std::max<std::uint64_t>(d, 1);
  while (fits(static_cast<double>(d + 1))) ++d;
  while (d > 1 && !fits(static_cast<double>(d))) --d;

  CommunityProfile profile;
  profile.max_size = d;
  profile.counts.reserve(d);
  for (std::uint64_t size = 1; size <= d; ++size) {
    profile.counts.push_back(n / std::pow(static_cast<double>(size), exponent));
  }
  return profile;
}

}  // namespace bter
