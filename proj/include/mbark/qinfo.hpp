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

#ifndef MBARK_QINFO_HPP
#define MBARK_QINFO_HPP

#include "mbark/hilbert.hpp"

namespace mbark {

/// Hermitian, trace-1, positive-semidefinite matrix over the retained
/// subsystems (tolerances per check_valid).
struct DensityMatrix {
  ModeLayout layout;
  CMat mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace() const { return mat.trace().real(); }

  /// Throws unless Hermitian within tol, trace 1 within tol, min eigenvalue >= -tol.
  void check_valid(double tol = 1e-9) const;
};

DensityMatrix pure_density(const StateVector& psi);

/// Reduced state over `keep` (ascending subsystem indices), tracing out the rest.
DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Tr sqrt( sqrt(rho) sigma sqrt(rho) ), clipped to [0, 1]. Eigenvalues below
/// 1e-12 are clamped to zero before the square roots.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Transpose the indices of the subsystems in `partition`.
CMat partial_transpose(const DensityMatrix& rho, std::span<const int> partition);

/// E_N = log2 || rho^{T_partition} ||_1 via the eigenvalues of the partial
/// transpose. Values at the numerical floor are reported as computed.
double log_negativity(const DensityMatrix& rho, std::span<const int> partition);

/// <b' b> at `site`.
double mean_occupation(const StateVector& psi, int site);
double mean_occupation(const DensityMatrix& rho, int site);

/// Caches sqrt(rho_ref) so fidelities of many states against one reference
/// (the F(rho_R, rho_t) trajectory scans) cost one eigendecomposition each
/// instead of two.
class FidelityReference {
 public:
  explicit FidelityReference(const DensityMatrix& ref);
  double fidelity(const DensityMatrix& rho) const;

 private:
  CMat sqrt_ref_;
};

}  // namespace mbark

#endif  // MBARK_QINFO_HPP
