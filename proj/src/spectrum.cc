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

#include "bter/spectrum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bter/errors.h"
#include "bter/format.h"
#include "bter/parallel.h"
#include "bter/rng.h"

namespace bter {
namespace {

using Vector = std::vector<double>;

double Dot(const Vector& a, const Vector& b) {
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(const Vector& a) { return std::sqrt(Dot(a, a)); }

void Axpy(double alpha, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Classical Gram-Schmidt against both sets, applied twice.
void Orthogonalize(Vector& w, const std::vector<Vector>& locked,
                   const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vector& y : locked) Axpy(-Dot(y, w), y, w);
    for (const Vector& q : basis) Axpy(-Dot(q, w), q, w);
  }
}

struct RitzSet {
  Vector values;                 // descending
  std::vector<Vector> vectors;   // aligned with values
  Vector residuals;              // explicit, against A
};

class Lanczos {
 public:
  Lanczos(const Graph& g, const std::vector<Vector>& locked, int threads,
          CounterRng& rng)
      : g_(g), locked_(locked), threads_(threads), rng_(rng),
        dim_(g.num_nodes() - locked.size()) {}

  // Runs until the top `want` Ritz pairs have explicit residual <= tol or
  // the step budget runs out. Returns the best Ritz set either way;
  // `converged` reports which.
  RitzSet Run(std::size_t want, double tol, std::size_t budget,
              std::size_t& steps_used, bool& converged) {
    const std::size_t n = g_.num_nodes();
    want = std::min(want, dim_);
    converged = false;
    steps_used = 0;
    if (want == 0) {
      converged = true;
      return {};
    }

    Vector q;
    if (!FreshVector(q)) {
      converged = true;
      return {};
    }
    Vector w(n);
    double anorm = 0;
    RitzSet best;
    while (steps_used < budget) {
      basis_.push_back(q);
      ++steps_used;
      AdjacencyMultiply(g_, q, w, threads_);
      for (const Vector& y : locked_) Axpy(-Dot(y, w), y, w);
      const double a = Dot(q, w);
      Axpy(-a, q, w);
      if (!beta_.empty() && basis_.size() >= 2) {
        Axpy(-beta_.back(), basis_[basis_.size() - 2], w);
      }
      Orthogonalize(w, locked_, basis_);
      const double b = Norm(w);
      alpha_.push_back(a);
      anorm = std::max(anorm, std::abs(a) + b + (beta_.empty() ? 0.0 : beta_.back()));

      const std::size_t m = basis_.size();
      const bool exhausted = m >= dim_;
      if (m >= want && (exhausted || EstimatesConverged(want, b, 0.25 * tol))) {
        best = Extract(want);
        const bool ok = std::all_of(best.residuals.begin(), best.residuals.end(),
                                    [tol](double r) { return r <= tol; });
        if (ok || exhausted) {
          converged = ok;
          return best;
        }
      }
      if (exhausted) break;

      if (b <= 1e-10 * std::max(anorm, 1.0)) {
        // Invariant subspace: continue from a fresh orthogonal direction.
        beta_.push_back(0.0);
        if (!FreshVector(q)) break;
      } else {
        beta_.push_back(b);
        for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
      }
    }
    best = Extract(want);
    converged = std::all_of(best.residuals.begin(), best.residuals.end(),
                            [tol](double r) { return r <= tol; });
    return best;
  }

 private:
  // Random unit vector orthogonal to locked and basis vectors.
  bool FreshVector(Vector& out) {
    const std::size_t n = g_.num_nodes();
    for (int attempt = 0; attempt < 5; ++attempt) {
      out.assign(n, 0.0);
      for (double& x : out) x = rng_.Uniform() - 0.5;
      Orthogonalize(out, locked_, basis_);
      const double norm = Norm(out);
      if (norm > 1e-8) {
        for (double& x : out) x /= norm;
        return true;
      }
    }
    return false;
  }

  // Ritz estimates |beta_m * s_{m,i}| for the top `want` values.
  bool EstimatesConverged(std::size_t want, double b, double target) const {
    const std::size_t m = alpha_.size();
    const std::size_t last[] = {m - 1};
    const auto eig = detail::SolveTridiagonal(alpha_, beta_, last);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return eig.values[x] > eig.values[y];
    });
    for (std::size_t i = 0; i < want; ++i) {
      if (std::abs(b * eig.vectors[order[i]]) > target) return false;
    }
    return true;
  }

  RitzSet Extract(std::size_t want) const {
    const std::size_t m = alpha_.size();
    const std::size_t n = g_.num_nodes();
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    const auto eig = detail::SolveTridiagonal(alpha_, beta_, rows);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return eig.values[x] > eig.values[y];
    });

    RitzSet set;
    want = std::min(want, m);
    Vector ay(n);
    for (std::size_t i = 0; i < want; ++i) {
      const std::size_t col = order[i];
      Vector y(n, 0.0);
      for (std::size_t j = 0; j < m; ++j) Axpy(eig.vectors[j * m + col], basis_[j], y);
      const double norm = Norm(y);
      for (double& x : y) x /= norm;
      const double theta = eig.values[col];
      AdjacencyMultiply(g_, y, ay, threads_);
      Axpy(-theta, y, ay);
      set.values.push_back(theta);
      set.residuals.push_back(Norm(ay));
      set.vectors.push_back(std::move(y));
    }
    return set;
  }

  const Graph& g_;
  const std::vector<Vector>& locked_;
  int threads_;
  CounterRng& rng_;
  std::size_t dim_;
  std::vector<Vector> basis_;
  Vector alpha_;
  Vector beta_;  // beta_[i] couples basis i and i + 1
};

SpectrumReport MakeReport(const RitzSet& set, const SpectrumOptions& options,
                          std::size_t iterations, bool converged) {
  SpectrumReport report;
  report.eigenvalues = set.values;
  report.residuals = set.residuals;
  report.k = options.k;
  report.tolerance = options.tolerance;
  report.iterations = iterations;
  report.converged = converged;
  return report;
}

}  // namespace

void AdjacencyMultiply(const Graph& g, std::span<const double> x,
                       std::span<double> y, int threads) {
  constexpr std::size_t kRowsPerTask = 4096;
  const std::size_t n = g.num_nodes();
  const std::size_t tasks = (n + kRowsPerTask - 1) / kRowsPerTask;
  ParallelFor(tasks, threads, [&](std::size_t t, int) {
    const std::size_t end = std::min(n, (t + 1) * kRowsPerTask);
    for (std::size_t i = t * kRowsPerTask; i < end; ++i) {
      double sum = 0;
      for (NodeId j : g.neighbors(static_cast<NodeId>(i))) sum += x[j];
      y[i] = sum;
    }
  });
}

SpectrumReport TopEigenvalues(const Graph& g, const SpectrumOptions& options) {
  const std::size_t n = g.num_nodes();
  if (options.k > n) {
    throw ConfigError("requested " + std::to_string(options.k) +
                      " eigenvalues of a " + std::to_string(n) + "-node graph");
  }
  if (!(options.tolerance > 0)) throw ConfigError("tolerance must be positive");
  const std::size_t k = options.k;
  if (k == 0) return MakeReport({}, options, 0, true);

  std::size_t budget = options.max_iterations;
  if (budget == 0) budget = 2 * std::min(n, std::max<std::size_t>(300, 20 * k));

  CounterRng rng(options.seed, StreamId::kSpectrum);
  std::vector<Vector> locked;
  RitzSet found;
  std::size_t total_steps = 0;

  std::size_t steps = 0;
  bool converged = false;
  {
    Lanczos lanczos(g, locked, options.threads, rng);
    found = lanczos.Run(k, options.tolerance, budget, steps, converged);
  }
  total_steps += steps;
  if (!converged) {
    throw ConvergenceError("Lanczos did not reach tolerance " +
                               FormatDouble(options.tolerance) + " within " +
                               std::to_string(budget) + " steps",
                           MakeReport(found, options, total_steps, false));
  }

  // Deflation: look for eigenvalues above the current k-th one in the
  // orthogonal complement of everything found so far.
  while (found.values.size() < n) {
    locked = found.vectors;
    Lanczos lanczos(g, locked, options.threads, rng);
    RitzSet extra = lanczos.Run(k, options.tolerance,
                                budget > total_steps ? budget - total_steps : 0,
                                steps, converged);
    total_steps += steps;
    if (!converged) {
      throw ConvergenceError("deflated Lanczos pass did not converge within " +
                                 std::to_string(budget) + " steps",
                             MakeReport(found, options, total_steps, false));
    }
    const double kth = found.values.size() < k
                           ? -std::numeric_limits<double>::infinity()
                           : found.values[k - 1];
    if (extra.values.empty() || extra.values.front() <= kth + options.tolerance) {
      break;
    }
    RitzSet merged;
    std::size_t i = 0, j = 0;
    while (merged.values.size() < k &&
           (i < found.values.size() || j < extra.values.size())) {
      const bool take_found =
          j >= extra.values.size() ||
          (i < found.values.size() && found.values[i] >= extra.values[j]);
      RitzSet& src = take_found ? found : extra;
      std::size_t& idx = take_found ? i : j;
      merged.values.push_back(src.values[idx]);
      merged.residuals.push_back(src.residuals[idx]);
      merged.vectors.push_back(std::move(src.vectors[idx]));
      ++idx;
    }
    found = std::move(merged);
  }

  // Explicit residuals against A (deflated pairs were checked against the
  // projected operator).
  Vector ay(n);
  for (std::size_t i = 0; i < found.values.size(); ++i) {
    AdjacencyMultiply(g, found.vectors[i], ay, options.threads);
    Axpy(-found.values[i], found.vectors[i], ay);
    found.residuals[i] = Norm(ay);
  }
  const bool ok = std::all_of(found.residuals.begin(), found.residuals.end(),
                              [&](double r) { return r <= options.tolerance; });
  auto report = MakeReport(found, options, total_steps, ok);
  if (!ok) {
    throw ConvergenceError("residual above tolerance after deflation",
                           std::move(report));
  }
  return report;
}

}  // namespace bter
