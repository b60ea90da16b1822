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

#include <doctest.h>

#include "mbark/hilbert.hpp"
#include "mbark/qinfo.hpp"
#include "test_util.hpp"

using namespace mbark;

TEST_SUITE("hilbert") {

TEST_CASE("annihilation operator matrix elements") {
  const Operator a2 = annihilation_op(2);
  CHECK(a2.mat(0, 1) == Complex(1.0));
  CHECK(a2.mat(0, 0) == Complex(0.0));
  CHECK(a2.mat(1, 0) == Complex(0.0));
  CHECK(a2.mat(1, 1) == Complex(0.0));

  const Operator a3 = annihilation_op(3);
  CHECK(a3.mat(0, 1).real() == doctest::Approx(1.0));
  CHECK(a3.mat(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a3.mat.cwiseAbs().sum() == doctest::Approx(1.0 + std::sqrt(2.0)));

  const CMat num = annihilation_op(5).mat.adjoint() * annihilation_op(5).mat;
  for (int n = 0; n < 5; ++n) CHECK(num(n, n).real() == doctest::Approx(n));

  CHECK_THROWS_AS(annihilation_op(1), std::invalid_argument);
}

TEST_CASE("truncated commutator [a, a'] = I - d |d-1><d-1|") {
  for (int d : {2, 3, 4, 9}) {
    const CMat a = annihilation_op(d).mat;
    CMat comm = a * a.adjoint() - a.adjoint() * a;
    CMat expected = CMat::Identity(d, d);
    expected(d - 1, d - 1) -= d;
    CHECK((comm - expected).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("embed places the local operator with site 0 slowest") {
  const ModeLayout layout({2, 2});
  CMat count = CMat::Zero(2, 2);
  count(1, 1) = 1.0;
  const Operator embedded = embed({ModeLayout({2}), count}, 0, layout);
  CMat expected = CMat::Zero(4, 4);
  expected(2, 2) = expected(3, 3) = 1.0;
  CHECK((embedded.mat - expected).cwiseAbs().maxCoeff() == 0.0);

  const Operator id = embed(identity_op(2), 1, layout);
  CHECK((id.mat - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed trace multiplicativity") {
  const ModeLayout layout({2, 3, 4});
  std::mt19937 rng(11);
  CMat local(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) local(i, j) = testutil::random_amps(1, rng)(0);
  const Operator e = embed({ModeLayout({3}), local}, 1, layout);
  CHECK(std::abs(e.mat.trace() - local.trace() * double(2 * 4)) <= 1e-12);
}

TEST_CASE("embed commutes with composition and across sites") {
  const ModeLayout layout({2, 3, 2});
  const Operator a = annihilation_op(3);
  const Operator n_op = number_op(3);

  const CMat lhs = embed({a.layout, a.mat * n_op.mat}, 1, layout).mat;
  const CMat rhs = embed(a, 1, layout).mat * embed(n_op, 1, layout).mat;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);

  const CMat x = embed(annihilation_op(2), 0, layout).mat;
  const CMat y = embed(annihilation_op(2), 2, layout).mat;
  CHECK((x * y - y * x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed rejects bad sites and dimensions") {
  const ModeLayout layout({2, 3});
  CHECK_THROWS_AS(embed(annihilation_op(2), 5, layout), std::out_of_range);
  CHECK_THROWS_AS(embed(annihilation_op(4), 1, layout), std::invalid_argument);
}

TEST_CASE("basis_state flattening: site 0 slowest") {
  const ModeLayout layout({4, 9, 9});
  const std::vector<int> occ{1, 0, 0};
  const StateVector psi = basis_state(layout, occ);
  CHECK(psi.amps(81) == Complex(1.0));
  CHECK(psi.norm() == doctest::Approx(1.0));

  const StateVector vac = vacuum_state(layout);
  CHECK(vac.amps(0) == Complex(1.0));

  const std::vector<int> bad{4, 0, 0};
  CHECK_THROWS_AS(basis_state(layout, bad), std::out_of_range);
}

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(ModeLayout({1, 4}), std::invalid_argument);
  CHECK_THROWS_AS(ModeLayout(std::vector<int>{}), std::invalid_argument);
  CHECK(ModeLayout::with_modes(3).total_dim() == 4 * 9 * 9 * 9);
}

TEST_CASE("flattening round-trip with partial_trace on product states") {
  const ModeLayout layout({2, 3, 2});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    // product state phi (x) chi (x) xi
    std::vector<CVec> local;
    for (int d : layout.dims) {
      CVec v = testutil::random_amps(d, rng);
      local.push_back(v / v.norm());
    }
    CVec amps(layout.total_dim());
    for (long idx = 0; idx < layout.total_dim(); ++idx) {
      const auto occ = layout.unflatten(idx);
      Complex prod(1.0, 0.0);
      for (int s = 0; s < layout.num_sites(); ++s) prod *= local[s](occ[s]);
      amps(idx) = prod;
    }
    const StateVector psi{layout, amps};

    for (int keep_site = 0; keep_site < 3; ++keep_site) {
      const std::vector<int> keep{keep_site};
      const DensityMatrix rho = partial_trace(psi, keep);
      const CMat expected = local[keep_site] * local[keep_site].adjoint();
      CHECK((rho.mat - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("unflatten inverts flat_index") {
  const ModeLayout layout({3, 4, 2});
  for (long idx = 0; idx < layout.total_dim(); ++idx) {
    const auto occ = layout.unflatten(idx);
    CHECK(layout.flat_index(occ) == idx);
  }
}

}  // TEST_SUITE
