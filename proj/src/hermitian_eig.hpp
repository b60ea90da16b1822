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

#ifndef MBARK_SRC_HERMITIAN_EIG_HPP
#define MBARK_SRC_HERMITIAN_EIG_HPP

// Internal helper: Hermitian eigendecomposition via LAPACKE zheevd when
// available (divide and conquer; the bound Eigen path only reaches zheev,
// which is several times slower at the ~3000 sizes the snapshots need),
// with the native Eigen solver as fallback.

#include "mbark/hilbert.hpp"

#ifdef EIGEN_USE_LAPACKE
#include <lapacke.h>
#endif

namespace mbark::detail {

struct HermitianEig {
  RVec values;
  CMat vectors;  // empty when compute_vectors = false
};

inline HermitianEig hermitian_eig(const CMat& h, bool compute_vectors) {
#ifdef EIGEN_USE_LAPACKE
  const auto n = static_cast<lapack_int>(h.rows());
  HermitianEig out;
  out.values.resize(n);
  CMat a = h;
  const int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, compute_vectors ? 'V' : 'N', 'L', n,
                     reinterpret_cast<lapack_complex_double*>(a.data()), n, out.values.data());
  if (info == 0) {
    if (compute_vectors) out.vectors = std::move(a);
    return out;
  }
  // fall through to the Eigen solver on LAPACK failure
#endif
  Eigen::SelfAdjointEigenSolver<CMat> solver;
  if (compute_vectors)
    solver.compute(h);
  else
    solver.compute(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigendecomposition failed");
  HermitianEig out2;
  out2.values = solver.eigenvalues();
  if (compute_vectors) out2.vectors = solver.eigenvectors();
  return out2;
}

}  // namespace mbark::detail

#endif  // MBARK_SRC_HERMITIAN_EIG_HPP
