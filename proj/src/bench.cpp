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

#include "mbark/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "mbark/parallel.hpp"

namespace mbark {

int qubits_required(int n, int n_dim) {
  if (n < 1 || n_dim < 2) throw std::invalid_argument("qubits_required: need n >= 1, n_dim >= 2");
  return static_cast<int>(std::ceil(1.0 + n * std::log2(static_cast<double>(n_dim))));
}

double ScalingProtocol::delta_for(int i) const {
  if (i < static_cast<int>(delta_pool.size())) return delta_pool[i];
  // extend the listed pattern: magnitudes grow by 25 MHz per pair, sign alternates
  const double mag = std::abs(delta_pool[i % 2]) + mhz_to_angular(25.0) * ((i - i % 2) / 2);
  return i % 2 == 0 ? mag : -mag;
}

DeviceParams ScalingProtocol::device_for(int n, int n_dim) const {
  if (n < 1 || n_dim < 2) throw std::invalid_argument("ScalingProtocol: need n >= 1, n_dim >= 2");
  DeviceParams dev;
  dev.layout = ModeLayout::with_modes(n, qubit_dim, n_dim);
  dev.kerr = kerr;
  dev.delta_q = delta_q;
  for (int i = 0; i < n; ++i) {
    dev.deltas.push_back(delta_for(i));
    dev.couplings.push_back(coupling);
  }
  return dev;
}

DriveSchedule ScalingProtocol::schedule_for(int n) const {
  DriveSchedule schedule;
  for (int i = 0; i < n; ++i) {
    GaussianPulse p;
    p.amplitude = amplitude;
    p.drive_detuning = delta_for(i);
    p.width = sigma;
    p.center = 3.0 * sigma;
    schedule.pulses.push_back(p);
    schedule.measure_times.push_back(measure_time);
  }
  return schedule;
}

std::string ScalingProtocol::config_hash() const {
  // FNV-1a over a canonical text form; recorded so rows are comparable only
  // within one protocol.
  std::ostringstream ss;
  ss << qubit_dim << ':' << kerr << ':' << delta_q << ':' << coupling << ':' << amplitude << ':'
     << sigma << ':' << measure_time << ':' << propagator.rel_tol << ':' << propagator.abs_tol
     << ':' << propagator.dense_spectral_max_dim;
  for (double d : delta_pool) ss << ':' << d;
  uint64_t h = 1469598103934665603ull;
  for (char c : ss.str()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

ScalingRow time_kernel_entry(int n, int n_dim, const ScalingProtocol& protocol) {
  ScalingRow row;
  row.n = n;
  row.n_dim = n_dim;
  row.n_q = qubits_required(n, n_dim);
  row.repeats = std::max(1, protocol.repeats);
  row.config_hash = protocol.config_hash();

  const DeviceParams device = protocol.device_for(n, n_dim);
  DriveSchedule schedule = protocol.schedule_for(n);

  // single-threaded by contract while the clock runs
  ThreadLimitGuard guard(1);

  std::vector<double> times;
  for (int r = 0; r < row.repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();

    // full K_ij path, no caching: both samples simulated end to end
    const Propagator prop(device, protocol.propagator);
    const TrajectoryResult traj1 = prop.run_schedule(schedule);
    const TrajectoryResult traj2 = prop.run_schedule(schedule);
    double k = 1.0;
    for (size_t l = 0; l < traj1.snapshots.size(); ++l)
      k *= uhlmann_fidelity(traj1.snapshots[l].second, traj2.snapshots[l].second);

    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    if (!(k >= 0.0)) throw std::runtime_error("time_kernel_entry: kernel value not finite");
  }

  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  row.t_c_seconds = sorted[sorted.size() / 2];
  double mean = 0.0;
  for (double t : times) mean += t;
  mean /= times.size();
  double var = 0.0;
  for (double t : times) var += (t - mean) * (t - mean);
  row.t_c_stddev = times.size() > 1 ? std::sqrt(var / (times.size() - 1)) : 0.0;
  return row;
}

}  // namespace mbark
