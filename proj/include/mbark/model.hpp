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

#ifndef MBARK_MODEL_HPP
#define MBARK_MODEL_HPP

#include <numbers>

#include "mbark/hilbert.hpp"

namespace mbark {

// Unit convention: configs carry ordinary frequencies f in MHz and times in
// microseconds; internally everything is angular, omega = 2*pi*f in rad/us,
// with hbar = 1.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline double mhz_to_angular(double f_mhz) { return kTwoPi * f_mhz; }
inline double angular_to_mhz(double omega) { return omega / kTwoPi; }

/// Physical constants of the qubit + mBAR system. All rates in rad/us.
struct DeviceParams {
  double kerr = 0.0;     // K >= 0; enters the Hamiltonian as -K a'^2 a^2
  double delta_q = 0.0;  // qubit detuning from the rotating frame
  std::vector<double> deltas;     // per-mode detunings
  std::vector<double> couplings;  // per-mode piezoelectric couplings g_i
  ModeLayout layout;

  int n_modes() const { return layout.num_modes(); }
  void validate() const;
};

/// Gaussian drive envelope, truncated to exactly zero outside the cutoff.
struct GaussianPulse {
  double amplitude = 0.0;       // peak, rad/us
  double drive_detuning = 0.0;  // rad/us
  double center = 0.0;          // us
  double width = 0.0;           // sigma, us
  double cutoff_radius = 0.0;   // us; 0 means 3*width

  double cutoff() const { return cutoff_radius > 0.0 ? cutoff_radius : 3.0 * width; }
  double support_begin() const { return center - cutoff(); }
  double support_end() const { return center + cutoff(); }
  void validate() const;
};

/// Per-sample control program: simultaneous pulses plus measurement times.
struct DriveSchedule {
  std::vector<GaussianPulse> pulses;
  std::vector<double> measure_times;  // us, ascending, all >= pulses_end()

  /// End of the last pulse support (the reference time t_R); 0 if no pulses.
  double pulses_end() const;
  void validate() const;
};

double pulse_envelope(const GaussianPulse& pulse, double t);

/// -Delta_q a'a + sum_i [ -Delta_i b_i'b_i + g_i (a'b_i + b_i'a) ]
Operator h_lin(const DeviceParams& device);

/// -K a'^2 a^2 on the qubit site; diagonal entries -K n(n-1).
Operator h_kerr(const DeviceParams& device);

/// sum_j Omega_j(t) (a' e^{+i delta_j t} + a e^{-i delta_j t})
Operator h_drive(const DriveSchedule& schedule, double t, const ModeLayout& layout);

Operator h_total(const DeviceParams& device, const DriveSchedule& schedule, double t);

}  // namespace mbark

#endif  // MBARK_MODEL_HPP
