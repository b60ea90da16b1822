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

#ifndef MBARK_BENCH_HPP
#define MBARK_BENCH_HPP

#include "mbark/kernel.hpp"

namespace mbark {

/// Protocol for timing a single kernel-matrix entry: fixed-amplitude pulses
/// resonant with each mode, all measurement times equal, single-threaded by
/// contract. Detunings for rows beyond the listed pool extend the pattern
/// with 25 MHz spacing, alternating sign.
struct ScalingProtocol {
  int qubit_dim = 4;
  double kerr = mhz_to_angular(400.0);
  double delta_q = mhz_to_angular(70.0);
  std::vector<double> delta_pool = {mhz_to_angular(10.0), mhz_to_angular(-15.0),
                                    mhz_to_angular(35.0), mhz_to_angular(-40.0)};
  double coupling = mhz_to_angular(10.0);
  double amplitude = mhz_to_angular(5.0);
  double sigma = 0.08;          // us
  double measure_time = 50.0;   // us
  int repeats = 1;
  PropagatorConfig propagator;

  double delta_for(int mode_index) const;
  DeviceParams device_for(int n, int n_dim) const;
  DriveSchedule schedule_for(int n) const;
  std::string config_hash() const;
};

struct ScalingRow {
  int n = 0;
  int n_dim = 0;
  int n_q = 0;
  double t_c_seconds = 0.0;  // median over repeats
  double t_c_stddev = 0.0;
  int repeats = 1;
  std::string config_hash;
};

/// ceil(log2(2 n_dim^n)) = ceil(1 + n log2(n_dim))
int qubits_required(int n, int n_dim);

/// Times one full K_ij computation: two sample simulations plus the fidelity
/// product, including Hamiltonian construction, propagation, rotation and
/// tracing. Forces a single thread for the duration.
ScalingRow time_kernel_entry(int n, int n_dim, const ScalingProtocol& protocol);

}  // namespace mbark

#endif  // MBARK_BENCH_HPP
