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

#ifndef MBARK_TESTS_TEST_UTIL_HPP
#define MBARK_TESTS_TEST_UTIL_HPP

#include <random>

#include "mbark/qinfo.hpp"

namespace mbark::testutil {

inline CVec random_amps(long dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(dim);
  for (long i = 0; i < dim; ++i) v(i) = Complex(dist(rng), dist(rng));
  return v;
}

inline StateVector random_state(const ModeLayout& layout, unsigned seed) {
  std::mt19937 rng(seed);
  CVec v = random_amps(layout.total_dim(), rng);
  v /= v.norm();
  return {layout, std::move(v)};
}

/// Random mixture of `rank` pure states.
inline DensityMatrix random_density(const ModeLayout& layout, unsigned seed, int rank = 3) {
  std::mt19937 rng(seed);
  const long dim = layout.total_dim();
  CMat rho = CMat::Zero(dim, dim);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  double total = 0.0;
  for (int r = 0; r < rank; ++r) {
    CVec v = random_amps(dim, rng);
    v /= v.norm();
    const double w = weight(rng);
    rho += w * (v * v.adjoint());
    total += w;
  }
  rho /= total;
  return {layout, std::move(rho)};
}

inline CMat random_unitary(long dim, unsigned seed) {
  std::mt19937 rng(seed);
  const CMat m = [&] {
    CMat a(dim, dim);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j) a(i, j) = Complex(dist(rng), dist(rng));
    return a;
  }();
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  return q;
}

/// 1 - |<psi1|psi2>|^2 for (approximately) normalized states.
inline double state_infidelity(const CVec& a, const CVec& b) {
  const double overlap = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return 1.0 - overlap * overlap;
}

}  // namespace mbark::testutil

#endif  // MBARK_TESTS_TEST_UTIL_HPP
