// Copyright 2026 The HedgeKit Authors.
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

#include "support/dual_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hedgekit::testing {
namespace {

constexpr double kFeasibilitySlack = 1e-10;

// Gaussian elimination with partial pivoting; false if singular.
bool Solve(std::vector<std::vector<double>> a, std::vector<double> b,
           std::vector<double> *x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    if (std::fabs(a[pivot][col]) < 1e-12) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x->assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * (*x)[c];
    (*x)[r] = s / a[r][r];
  }
  return true;
}

}  // namespace

double DenseRbf(const std::vector<double> &x, const std::vector<double> &z, double gamma) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - z[k]) * (x[k] - z[k]);
  return std::exp(-gamma * d2);
}

OracleSolution SolveDualExhaustively(const DenseProblem &p) {
  const std::size_t n = p.points.size();
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q[i][j] = p.labels[i] * p.labels[j] * DenseRbf(p.points[i], p.points[j], p.gamma);
    }
  }
  auto objective = [&](const std::vector<double> &a) {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += a[i];
      for (std::size_t j = 0; j < n; ++j) quad += a[i] * a[j] * q[i][j];
    }
    return lin - 0.5 * quad;
  };

  OracleSolution best;
  best.objective = -std::numeric_limits<double>::infinity();
  bool best_has_free = false;
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= 3;

  for (std::size_t code = 0; code < states; ++code) {
    std::vector<int> state(n);
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      state[i] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    std::vector<double> a(n, 0.0);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == 1) a[i] = p.upper[i];
      if (state[i] == 2) free.push_back(i);
    }
    double bias = 0.0;
    if (free.empty()) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += p.labels[i] * a[i];
      if (std::fabs(s) > 1e-12) continue;
    } else {
      // Unknowns: alpha_F, then b.
      const std::size_t m = free.size();
      std::vector<std::vector<double>> lhs(m + 1, std::vector<double>(m + 1, 0.0));
      std::vector<double> rhs(m + 1, 0.0);
      for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = free[r];
        double fixed = 0.0;
        for (std::size_t j = 0; j < n; ++j) fixed += q[i][j] * a[j];
        for (std::size_t c = 0; c < m; ++c) lhs[r][c] = q[i][free[c]];
        lhs[r][m] = p.labels[i];
        rhs[r] = 1.0 - fixed;
      }
      double fixed_sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) fixed_sum += p.labels[j] * a[j];
      for (std::size_t c = 0; c < m; ++c) lhs[m][c] = p.labels[free[c]];
      rhs[m] = -fixed_sum;
      std::vector<double> x;
      if (!Solve(lhs, rhs, &x)) continue;
      bool feasible = true;
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t i = free[c];
        if (x[c] < -kFeasibilitySlack || x[c] > p.upper[i] + kFeasibilitySlack) feasible = false;
        a[i] = std::clamp(x[c], 0.0, p.upper[i]);
      }
      if (!feasible) continue;
      bias = x[m];
    }
    const double obj = objective(a);
    if (obj > best.objective + 1e-13) {
      best.objective = obj;
      best.alphas = a;
      best.bias = bias;
      best_has_free = !free.empty();
    }
  }
  if (best.alphas.empty()) throw std::runtime_error("oracle found no feasible point");

  std::vector<double> g(n, 0.0);  // sum_j alpha_j y_j K_ij
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g[i] += best.alphas[j] * p.labels[j] * DenseRbf(p.points[i], p.points[j], p.gamma);
    }
  }
  if (!best_has_free) {
    // Any b satisfying the KKT inequalities works; take the middle of the
    // admissible interval.
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      // y (g + b) >= 1 when alpha = 0, <= 1 when alpha = C.
      const double edge = p.labels[i] * 1.0 - g[i];  // y = +-1, so 1/y = y
      const bool at_zero = best.alphas[i] == 0.0;
      if ((p.labels[i] > 0) == at_zero) {
        lo = std::max(lo, edge);
      } else {
        hi = std::min(hi, edge);
      }
    }
    best.bias = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi)
                                                       : (std::isfinite(lo) ? lo : hi);
  }
  for (std::size_t i = 0; i < n; ++i) {
    best.train_predictions.push_back(g[i] + best.bias >= 0.0 ? 1 : -1);
  }
  return best;
}

}  // namespace hedgekit::testing
