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

#include <random>

#include "mbark/dynamics.hpp"
#include "mbark/model.hpp"
#include "mbark/qinfo.hpp"

using namespace mbark;

namespace {

DeviceParams two_mode_device() {
  DeviceParams dev;
  dev.layout = ModeLayout({3, 3, 3});
  dev.kerr = mhz_to_angular(50.0);
  dev.delta_q = mhz_to_angular(100.0);
  dev.deltas = {mhz_to_angular(10.0), mhz_to_angular(-10.0)};
  dev.couplings = {mhz_to_angular(8.0), mhz_to_angular(8.0)};
  return dev;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("unit conversion follows the value/2pi convention") {
  CHECK(mhz_to_angular(1.0) == doctest::Approx(2.0 * 3.14159265358979323846));
  CHECK(angular_to_mhz(mhz_to_angular(400.0)) == doctest::Approx(400.0));
}

TEST_CASE("h_lin: Hermitian, diagonal case eigenvalue -Delta_i") {
  DeviceParams dev = two_mode_device();
  dev.couplings = {0.0, 0.0};
  const Operator h = h_lin(dev);
  CHECK(h.is_hermitian(1e-14));

  // single excitation in mode 1
  const std::vector<int> occ{0, 1, 0};
  const long idx = dev.layout.flat_index(occ);
  CHECK(h.mat(idx, idx).real() == doctest::Approx(-dev.deltas[0]));
  for (long j = 0; j < h.dim(); ++j)
    if (j != idx) CHECK(std::abs(h.mat(idx, j)) == 0.0);
}

TEST_CASE("h_lin: resonant single-excitation block splits by +-g") {
  DeviceParams dev;
  dev.layout = ModeLayout({2, 2});
  dev.kerr = 0.0;
  dev.delta_q = 0.0;
  dev.deltas = {0.0};
  dev.couplings = {mhz_to_angular(5.0)};
  const Operator h = h_lin(dev);
  Eigen::SelfAdjointEigenSolver<CMat> eig(h.mat);
  // spectrum {-g, 0, 0, +g}
  CHECK(eig.eigenvalues()(0) == doctest::Approx(-dev.couplings[0]));
  CHECK(eig.eigenvalues()(1) == doctest::Approx(0.0));
  CHECK(eig.eigenvalues()(2) == doctest::Approx(0.0));
  CHECK(eig.eigenvalues()(3) == doctest::Approx(dev.couplings[0]));
}

TEST_CASE("h_kerr: diagonal -K n(n-1) on the qubit") {
  const DeviceParams dev = two_mode_device();
  const Operator h = h_kerr(dev);
  for (int nq = 0; nq < 3; ++nq) {
    const std::vector<int> occ{nq, 0, 0};
    const long idx = dev.layout.flat_index(occ);
    CHECK(h.mat(idx, idx).real() == doctest::Approx(-dev.kerr * nq * (nq - 1)));
  }
  // occupation 0 and 1 give exactly zero
  CHECK(h.mat(0, 0) == Complex(0.0));
  const std::vector<int> one{1, 0, 0};
  CHECK(h.mat(dev.layout.flat_index(one), dev.layout.flat_index(one)) == Complex(0.0));

  DeviceParams big = dev;
  big.layout = ModeLayout({4, 2});
  big.deltas = {0.0};
  big.couplings = {0.0};
  const Operator h4 = h_kerr(big);
  const std::vector<int> three{3, 0};
  CHECK(h4.mat(big.layout.flat_index(three), big.layout.flat_index(three)).real() ==
        doctest::Approx(-6.0 * big.kerr));
}

TEST_CASE("pulse envelope: peak, analytic point, hard cutoff") {
  GaussianPulse p;
  p.amplitude = 2.0;
  p.center = 1.0;
  p.width = 0.08;
  CHECK(pulse_envelope(p, 1.0) == doctest::Approx(2.0));
  CHECK(pulse_envelope(p, 1.0 + 0.08) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(pulse_envelope(p, 1.0 + 3 * 0.08) == 0.0);
  CHECK(pulse_envelope(p, 1.0 - 3 * 0.08) == 0.0);
  CHECK(pulse_envelope(p, 1.0 + 3 * 0.08 - 1e-9) > 0.0);
}

TEST_CASE("h_drive: zero outside supports, resonant peak form, Hermitian") {
  const DeviceParams dev = two_mode_device();
  DriveSchedule sch;
  GaussianPulse p;
  p.amplitude = mhz_to_angular(9.0);
  p.drive_detuning = 0.0;
  p.center = 0.24;
  p.width = 0.08;
  sch.pulses.push_back(p);

  const Operator past = h_drive(sch, 10.0, dev.layout);
  CHECK(past.mat.cwiseAbs().maxCoeff() == 0.0);

  const Operator peak = h_drive(sch, 0.24, dev.layout);
  const Operator a = embed(annihilation_op(3), 0, dev.layout);
  const CMat expected = p.amplitude * (a.mat.adjoint() + a.mat);
  CHECK((peak.mat - expected).cwiseAbs().maxCoeff() <= 1e-12);

  GaussianPulse detuned = p;
  detuned.drive_detuning = mhz_to_angular(10.0);
  sch.pulses.push_back(detuned);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> tdist(0.0, 0.5);
  for (int k = 0; k < 100; ++k) {
    const Operator h = h_drive(sch, tdist(rng), dev.layout);
    CHECK((h.mat - h.mat.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("h_total composition and static tail") {
  DeviceParams dev = two_mode_device();
  DriveSchedule sch;
  GaussianPulse p;
  p.amplitude = mhz_to_angular(9.0);
  p.drive_detuning = dev.deltas[0];
  p.center = 0.24;
  p.width = 0.08;
  sch.pulses.push_back(p);

  DeviceParams nokerr = dev;
  nokerr.kerr = 0.0;
  DriveSchedule empty;
  const Operator lhs = h_total(nokerr, empty, 0.1);
  CHECK((lhs.mat - h_lin(nokerr).mat).cwiseAbs().maxCoeff() == 0.0);

  // past every cutoff the assembled matrix is bitwise time-independent
  const Operator t1 = h_total(dev, sch, 1.0);
  const Operator t2 = h_total(dev, sch, 57.3);
  CHECK(std::memcmp(t1.mat.data(), t2.mat.data(),
                    sizeof(Complex) * t1.mat.size()) == 0);

  const Operator static_sum = h_total(dev, sch, 2.0);
  CHECK((static_sum.mat - h_lin(dev).mat - h_kerr(dev).mat).cwiseAbs().maxCoeff() == 0.0);

  Eigen::SelfAdjointEigenSolver<CMat> eig(h_total(dev, sch, 0.2).mat);
  CHECK(eig.info() == Eigen::Success);
}

TEST_CASE("resonant drive convention: occupation peaks at delta = Delta_i") {
  // one-mode device, weak pulse; scan the drive detuning around the mode
  DeviceParams dev;
  dev.layout = ModeLayout({3, 4});
  dev.kerr = 0.0;
  dev.delta_q = mhz_to_angular(70.0);
  dev.deltas = {mhz_to_angular(10.0)};
  dev.couplings = {mhz_to_angular(10.0)};

  double best_occ = -1.0, best_offset = 1e9;
  for (double offset : {-4.0, -2.0, 0.0, 2.0, 4.0}) {
    DriveSchedule sch;
    GaussianPulse p;
    p.amplitude = mhz_to_angular(5.0);
    p.drive_detuning = dev.deltas[0] + mhz_to_angular(offset);
    p.center = 0.24;
    p.width = 0.08;
    sch.pulses.push_back(p);
    const StateVector psi =
        integrate_tdse(vacuum_state(dev.layout), dev, sch, 0.0, sch.pulses_end());
    const double occ = mean_occupation(psi, 1);
    if (occ > best_occ) {
      best_occ = occ;
      best_offset = offset;
    }
  }
  CHECK(best_offset == 0.0);
}

TEST_CASE("schedule validation") {
  DriveSchedule sch;
  GaussianPulse p;
  p.amplitude = 1.0;
  p.width = 0.08;
  p.center = 0.24;
  sch.pulses.push_back(p);

  sch.measure_times = {0.1};  // precedes end of pulse support
  CHECK_THROWS_AS(sch.validate(), std::invalid_argument);
  sch.measure_times = {1.0, 0.9};
  CHECK_THROWS_AS(sch.validate(), std::invalid_argument);
  sch.measure_times = {0.48, 1.0, 1.0};
  CHECK_NOTHROW(sch.validate());

  GaussianPulse bad = p;
  bad.width = 0.0;
  DriveSchedule sch2;
  sch2.pulses.push_back(bad);
  CHECK_THROWS_AS(sch2.validate(), std::invalid_argument);

  DeviceParams dev;
  dev.layout = ModeLayout({4, 9});
  dev.deltas = {1.0, 2.0};  // wrong length
  dev.couplings = {1.0, 2.0};
  CHECK_THROWS_AS(dev.validate(), std::invalid_argument);
}

}  // TEST_SUITE
