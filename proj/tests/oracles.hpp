// Copyright 2026 The mbark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBARK_TESTS_ORACLES_HPP
#define MBARK_TESTS_ORACLES_HPP

// Independent reference computations the implementation is checked against.
// These deliberately share no code with the production propagation or SMO
// paths.

#include <optional>

#include "mbark/dynamics.hpp"
#include "mbark/kernel.hpp"

namespace mbark::oracle {

/// Fixed-step midpoint-exponential propagator: U = exp(-i H(t + dt/2) dt)
/// applied via a fresh dense eigendecomposition every step.
inline StateVector midpoint_exponential(const StateVector& psi0, const DeviceParams& device,
                                        const DriveSchedule& schedule, double t0, double t1,
                                        double dt = 1e-4) {
  StateVector psi = psi0;
  const long steps = std::lround((t1 - t0) / dt);
  for (long s = 0; s < steps; ++s) {
    const double t = t0 + s * dt;
    const Operator h = h_total(device, schedule, t + 0.5 * dt);
    Eigen::SelfAdjointEigenSolver<CMat> eig(h.mat);
    CVec w = eig.eigenvectors().adjoint() * psi.amps;
    for (long i = 0; i < w.size(); ++i)
      w(i) *= std::exp(Complex(0.0, -eig.eigenvalues()(i) * dt));
    psi.amps = eig.eigenvectors() * w;
  }
  const double rem = (t1 - t0) - steps * dt;
  if (std::abs(rem) > 1e-12) {
    const Operator h = h_total(device, schedule, t1 - 0.5 * rem);
    Eigen::SelfAdjointEigenSolver<CMat> eig(h.mat);
    CVec w = eig.eigenvectors().adjoint() * psi.amps;
    for (long i = 0; i < w.size(); ++i)
      w(i) *= std::exp(Complex(0.0, -eig.eigenvalues()(i) * rem));
    psi.amps = eig.eigenvectors() * w;
  }
  return psi;
}

struct DualSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  double objective = 0.0;
};

/// Exact C-SVM dual optimum for tiny problems by enumerating the support
/// pattern of every point (zero / at bound / free) and solving the KKT
/// equalities for each pattern. Valid for positive semidefinite kernels.
inline std::optional<DualSolution> exhaustive_dual(const RMat& k, std::span<const int8_t> y,
                                                   double c) {
  const int n = static_cast<int>(k.rows());
  std::optional<DualSolution> best;
  std::vector<int> pattern(n);  // 0 = zero, 1 = at C, 2 = free

  const long total = static_cast<long>(std::pow(3.0, n));
  for (long code = 0; code < total; ++code) {
    long rest = code;
    for (int i = 0; i < n; ++i) {
      pattern[i] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (pattern[i] == 2) free.push_back(i);
    if (free.empty()) continue;

    // unknowns: alpha_free then b
    const int m = static_cast<int>(free.size());
    RMat a = RMat::Zero(m + 1, m + 1);
    RVec rhs = RVec::Zero(m + 1);
    for (int r = 0; r < m; ++r) {
      const int i = free[r];
      for (int s = 0; s < m; ++s) a(r, s) = k(i, free[s]) * y[free[s]];
      a(r, m) = 1.0;
      rhs(r) = y[i];
      for (int j = 0; j < n; ++j)
        if (pattern[j] == 1) rhs(r) -= c * y[j] * k(i, j);
    }
    for (int s = 0; s < m; ++s) a(m, s) = y[free[s]];
    for (int j = 0; j < n; ++j)
      if (pattern[j] == 1) rhs(m) -= c * y[j];

    Eigen::FullPivLU<RMat> lu(a);
    if (!lu.isInvertible()) continue;
    const RVec sol = lu.solve(rhs);

    std::vector<double> alpha(n, 0.0);
    bool feasible = true;
    for (int r = 0; r < m; ++r) {
      alpha[free[r]] = sol(r);
      if (sol(r) < -1e-9 || sol(r) > c + 1e-9) feasible = false;
    }
    for (int j = 0; j < n; ++j)
      if (pattern[j] == 1) alpha[j] = c;
    if (!feasible) continue;
    const double b = sol(m);

    // inequality KKT conditions for the zero / bound sets
    for (int i = 0; i < n && feasible; ++i) {
      double f = b;
      for (int j = 0; j < n; ++j) f += alpha[j] * y[j] * k(i, j);
      const double margin = y[i] * f;
      if (pattern[i] == 0 && margin < 1.0 - 1e-7) feasible = false;
      if (pattern[i] == 1 && margin > 1.0 + 1e-7) feasible = false;
    }
    if (!feasible) continue;

    double obj = 0.0;
    for (int i = 0; i < n; ++i) {
      obj += alpha[i];
      for (int j = 0; j < n; ++j) obj -= 0.5 * alpha[i] * alpha[j] * y[i] * y[j] * k(i, j);
    }
    if (!best || obj > best->objective) best = DualSolution{alpha, b, obj};
  }
  return best;
}

}  // namespace mbark::oracle

#endif  // MBARK_TESTS_ORACLES_HPP
