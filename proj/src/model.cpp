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

#include "mbark/model.hpp"

#include <algorithm>
#include <cmath>

namespace mbark {

void DeviceParams::validate() const {
  layout.validate();
  const auto n = static_cast<size_t>(layout.num_modes());
  if (deltas.size() != n || couplings.size() != n)
    throw std::invalid_argument("DeviceParams: deltas/couplings length must equal mode count");
  if (kerr < 0.0) throw std::invalid_argument("DeviceParams: kerr must be >= 0");
}

void GaussianPulse::validate() const {
  if (width <= 0.0) throw std::invalid_argument("GaussianPulse: width must be > 0");
  if (cutoff_radius > 0.0 && cutoff_radius < 3.0 * width)
    throw std::invalid_argument("GaussianPulse: cutoff_radius must be >= 3*width");
}

double DriveSchedule::pulses_end() const {
  double end = 0.0;
  for (const auto& p : pulses) end = std::max(end, p.support_end());
  return end;
}

void DriveSchedule::validate() const {
  for (const auto& p : pulses) p.validate();
  const double end = pulses_end();
  double prev = 0.0;
  for (double t : measure_times) {
    if (t <= 0.0) throw std::invalid_argument("DriveSchedule: measure times must be > 0");
    if (t < prev) throw std::invalid_argument("DriveSchedule: measure times must be ascending");
    if (t < end)
      throw std::invalid_argument("DriveSchedule: measure time precedes end of pulse supports");
    prev = t;
  }
}

double pulse_envelope(const GaussianPulse& pulse, double t) {
  const double dt = t - pulse.center;
  if (std::abs(dt) >= pulse.cutoff()) return 0.0;
  return pulse.amplitude * std::exp(-dt * dt / (2.0 * pulse.width * pulse.width));
}

Operator h_lin(const DeviceParams& device) {
  device.validate();
  const ModeLayout& layout = device.layout;
  const Operator a = embed(annihilation_op(layout.dims[0]), 0, layout);

  CMat h = (-device.delta_q) * (a.mat.adjoint() * a.mat);
  for (int i = 0; i < device.n_modes(); ++i) {
    const Operator b = embed(annihilation_op(layout.dims[i + 1]), i + 1, layout);
    h += (-device.deltas[i]) * (b.mat.adjoint() * b.mat);
    const CMat ab = a.mat.adjoint() * b.mat;
    h += device.couplings[i] * (ab + ab.adjoint());
  }
  return {layout, std::move(h)};
}

Operator h_kerr(const DeviceParams& device) {
  device.validate();
  const int dq = device.layout.dims[0];
  CMat local = CMat::Zero(dq, dq);
  for (int n = 0; n < dq; ++n) local(n, n) = -device.kerr * n * (n - 1);
  return embed({ModeLayout({dq}), std::move(local)}, 0, device.layout);
}

Operator h_drive(const DriveSchedule& schedule, double t, const ModeLayout& layout) {
  // All pulses act on the qubit: sum_j Omega_j(t) e^{+i delta_j t} collects
  // into a single complex coefficient on a'.
  Complex c(0.0, 0.0);
  for (const auto& p : schedule.pulses) {
    const double env = pulse_envelope(p, t);
    if (env == 0.0) continue;
    c += env * std::exp(Complex(0.0, p.drive_detuning * t));
  }
  const long dim = layout.total_dim();
  if (c == Complex(0.0)) return {layout, CMat::Zero(dim, dim)};
  const Operator a = embed(annihilation_op(layout.dims[0]), 0, layout);
  CMat h = c * a.mat.adjoint() + std::conj(c) * a.mat;
  return {layout, std::move(h)};
}

Operator h_total(const DeviceParams& device, const DriveSchedule& schedule, double t) {
  Operator h = h_lin(device);
  h.mat += h_kerr(device).mat;
  h.mat += h_drive(schedule, t, device.layout).mat;
  return h;
}

}  // namespace mbark
