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

#ifndef BTER_SPECTRUM_H_
#define BTER_SPECTRUM_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bter/graph.h"

namespace bter {

struct SpectrumOptions {
  std::size_t k = 25;
  // Bound on ||A v - lambda v|| / ||v|| for every reported pair.
  double tolerance = 1e-8;
  // Seeds the starting vector.
  std::uint64_t seed = 0;
  // Cap on Lanczos steps summed over all passes; 0 picks a default from n
  // and k.
  std::size_t max_iterations = 0;
  int threads = 1;
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // descending
  std::vector<double> residuals;    // per pair
  std::size_t k = 0;
  double tolerance = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SpectrumReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const SpectrumReport& partial() const { return partial_; }

 private:
  SpectrumReport partial_;
};

// Top-k algebraically largest adjacency eigenvalues via Lanczos with full
// reorthogonalization, using only sparse matrix-vector products. Invariant
// subspaces trigger a restart from a fresh orthogonal vector, and a
// deflated pass on the complement of the converged vectors picks up
// eigenvalues the first Krylov space missed (repeated eigenvalues in
// particular). Deterministic for a fixed seed and any thread count.
// Throws ConfigError if k > n or tolerance <= 0, ConvergenceError when the
// iteration cap is hit.
SpectrumReport TopEigenvalues(const Graph& g, const SpectrumOptions& options);

// y = A x for the adjacency matrix of g.
void AdjacencyMultiply(const Graph& g, std::span<const double> x,
                       std::span<double> y, int threads = 1);

namespace detail {

// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
// `diag` and off-diagonal `off` (off[i] couples i and i + 1) by implicit QL
// with Wilkinson shifts. `rows` selects which rows of the eigenvector matrix
// to accumulate: row r of the result holds component r of every
// eigenvector. Eigenvalues come back unsorted, aligned with the columns.
struct TridiagonalEigen {
  std::vector<double> values;
  // Row-major, rows.size() x n.
  std::vector<double> vectors;
};
TridiagonalEigen SolveTridiagonal(std::span<const double> diag,
                                  std::span<const double> off,
                                  std::span<const std::size_t> rows);

}  // namespace detail
}  // namespace bter

#endif  // BTER_SPECTRUM_H_
