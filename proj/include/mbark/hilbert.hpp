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

#ifndef MBARK_HILBERT_HPP
#define MBARK_HILBERT_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mbark {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Tensor-product structure of the composite Hilbert space.
///
/// Site 0 is the qubit, sites 1..n are the resonator modes. The flattening
/// convention is fixed project-wide: site 0 is the slowest-varying index,
/// i.e. flat = ((occ[0]*d1 + occ[1])*d2 + occ[2])*...
struct ModeLayout {
  std::vector<int> dims;

  ModeLayout() = default;
  explicit ModeLayout(std::vector<int> d) : dims(std::move(d)) { validate(); }

  /// Qubit truncated to `qubit_dim`, `n_modes` resonators truncated to `mode_dim`.
  static ModeLayout with_modes(int n_modes, int qubit_dim = 4, int mode_dim = 9);

  int num_sites() const { return static_cast<int>(dims.size()); }
  int num_modes() const { return num_sites() - 1; }
  long total_dim() const;

  /// Product of dims strictly after `site`.
  long stride(int site) const;

  long flat_index(std::span<const int> occupations) const;
  std::vector<int> unflatten(long index) const;

  void validate() const;
  bool operator==(const ModeLayout&) const = default;
};

/// Dense operator on the space described by `layout` (single-site layouts
/// are used for local operators before embedding).
struct Operator {
  ModeLayout layout;
  CMat mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  bool is_hermitian(double tol = 1e-12) const;
  Operator adjoint() const { return {layout, mat.adjoint()}; }
};

struct StateVector {
  ModeLayout layout;
  CVec amps;

  double norm() const { return amps.norm(); }
};

/// Truncated bosonic lowering operator: M[n-1, n] = sqrt(n).
Operator annihilation_op(int dim);
Operator creation_op(int dim);
Operator number_op(int dim);
Operator identity_op(int dim);

/// Lift a local operator to the composite space: identity everywhere except `site`.
Operator embed(const Operator& local, int site, const ModeLayout& layout);

/// Unit vector with a single nonzero amplitude at the flattened multi-index.
StateVector basis_state(const ModeLayout& layout, std::span<const int> occupations);
StateVector vacuum_state(const ModeLayout& layout);

}  // namespace mbark

#endif  // MBARK_HILBERT_HPP
