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

#ifndef BTER_THEORY_H_
#define BTER_THEORY_H_

#include <cstdint>
#include <span>
#include <vector>

namespace bter {

// Largest community size for which exact triple enumeration is used.
inline constexpr std::size_t kExactTriangleLimit = 1000;

struct ExpectedTriangles {
  double value = 0;
  // False when `value` is the closed-form upper bound
  // (sum d^2)^3 / (8 s^3) rather than the exact expectation.
  bool exact = true;
};

// Expected triangle count of a CL graph on the given (internal) degrees,
// pair probability min(1, d_i d_j / 2s) with s = sum(d) / 2. Exact triple
// sum up to kExactTriangleLimit degrees (parallel over the outer index,
// reduced in index order), the closed-form bound above it. Throws
// ConfigError on empty input or zero degrees.
ExpectedTriangles ClExpectedTriangles(std::span<const std::uint32_t> degrees,
                                      int threads = 1);

// Closed-form upper bound (sum d^2)^3 / (8 s^3) on the uncapped sum.
double ClTriangleBound(std::span<const std::uint32_t> degrees);

// t <= m^(3/2), evaluated exactly as t^2 <= m^3.
bool KruskalKatonaCheck(std::uint64_t triangles, std::uint64_t edges);

// C(d, 2), zero for d < 2.
inline double Choose2(std::uint64_t d) {
  return d < 2 ? 0.0 : static_cast<double>(d) * static_cast<double>(d - 1) / 2.0;
}

struct CoreCensus {
  double c = 0;
  double threshold = 0;       // c * sqrt(s)
  std::uint64_t count = 0;    // nodes with degree >= threshold
  std::uint32_t min_degree = 0;  // smallest degree among them (0 if none)
};

struct CommunityAudit {
  double s = 0;
  double expected_triangles = 0;
  bool exact = true;
  double kappa = 0;
  double wedge_threshold = 0;  // (kappa / 3) * sum C(d_i, 2)
  bool passes = false;         // expected_triangles > wedge_threshold
  std::vector<CoreCensus> cores;
  // sum_{i > j} d_i^2 / j with j the 1-based index of the first degree > 1
  // in ascending order: the largest c for which the structure theorem's
  // side condition holds. Reported, never used for the verdict.
  double side_condition_ratio = 0;
};

inline constexpr double kDefaultCoreConstants[] = {0.25, 0.5, 1.0};

// Community criterion on internal degrees. Zero degrees are ignored.
// Throws ConfigError unless 0 < kappa < 1 and some degree is positive.
CommunityAudit AuditCommunity(
    std::span<const std::uint32_t> internal_degrees, double kappa,
    std::span<const double> core_constants = kDefaultCoreConstants,
    int threads = 1);

struct CommunityProfile {
  // counts[d - 1] = n / d^(gamma + 1) for d = 1..max_size.
  std::vector<double> counts;
  // Largest d with n / d^(gamma + 1) >= 1.
  std::uint64_t max_size = 0;
};

// Scale-free community-size prediction for n nodes with degree exponent
// gamma. Throws ConfigError unless n >= 1 and gamma > 0.
CommunityProfile PredictCommunityProfile(double n, double gamma);

}  // namespace bter

#endif  // BTER_THEORY_H_
