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

#include "mbark/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mbark/io.hpp"
#include "mbark/parallel.hpp"

namespace mbark {

void EncodingConfig::validate(const DeviceParams& device) const {
  if (sigma <= 0.0) throw EncodingError("EncodingConfig: sigma must be > 0");
  if (omega_max < omega_min) throw EncodingError("EncodingConfig: omega_max < omega_min");
  const double support_end = pulse_center() + 3.0 * sigma;
  if (!(t_min >= support_end))
    throw EncodingError("EncodingConfig: t_min must be >= end of pulse support");
  if (!(t_max > t_min)) throw EncodingError("EncodingConfig: t_max must be > t_min");
  if (!drive_detunings.empty() &&
      drive_detunings.size() != static_cast<size_t>(device.n_modes()))
    throw EncodingError("EncodingConfig: drive_detunings length must equal mode count");
}

DriveSchedule encode_sample(const Sample& x, const EncodingConfig& enc,
                            const DeviceParams& device) {
  enc.validate(device);
  const int d = device.n_modes();
  if (static_cast<int>(x.features.size()) != d)
    throw EncodingError("encode_sample: feature count must equal resonator mode count");
  for (double v : x.features)
    if (!(v >= 0.0 && v <= 1.0))
      throw EncodingError("encode_sample: feature outside [0,1] in sample '" + x.id + "'");

  DriveSchedule schedule;
  for (int j = 0; j < d; ++j) {
    GaussianPulse p;
    p.amplitude = enc.omega_min + (enc.omega_max - enc.omega_min) * x.features[j];
    p.drive_detuning = enc.drive_detunings.empty() ? device.deltas[j] : enc.drive_detunings[j];
    p.center = enc.pulse_center();
    p.width = enc.sigma;
    schedule.pulses.push_back(p);
    schedule.measure_times.push_back(enc.t_min + (enc.t_max - enc.t_min) * x.features[j]);
  }
  std::sort(schedule.measure_times.begin(), schedule.measure_times.end());
  schedule.validate();
  return schedule;
}

std::vector<DensityMatrix> sample_states(const Sample& x, const EncodingConfig& enc,
                                         const Propagator& prop) {
  const DriveSchedule schedule = encode_sample(x, enc, prop.device());
  const TrajectoryResult traj = prop.run_schedule(schedule);

  // run_schedule reports snapshots in (sorted) schedule order; re-order them
  // by feature index so snapshot l corresponds to T_l = T(x_l).
  std::vector<DensityMatrix> out;
  out.reserve(x.features.size());
  for (double f : x.features) {
    const double t = enc.t_min + (enc.t_max - enc.t_min) * f;
    auto it = std::find_if(traj.snapshots.begin(), traj.snapshots.end(),
                           [t](const auto& s) { return s.first == t; });
    if (it == traj.snapshots.end())
      throw std::logic_error("sample_states: missing snapshot for encoded time");
    out.push_back(it->second);
  }
  return out;
}

double kernel_entry(std::span<const DensityMatrix> rhos1, std::span<const DensityMatrix> rhos2) {
  if (rhos1.size() != rhos2.size())
    throw std::invalid_argument("kernel_entry: snapshot list length mismatch");
  double k = 1.0;
  for (size_t l = 0; l < rhos1.size(); ++l) k *= uhlmann_fidelity(rhos1[l], rhos2[l]);
  return std::clamp(k, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// RhoCache

void RhoCache::ensure(std::span<const Sample> samples, const EncodingConfig& enc,
                      const Propagator& prop) {
  // Collect ids not yet present, first occurrence wins.
  std::vector<const Sample*> missing;
  {
    std::lock_guard lock(mutex_);
    for (const auto& s : samples) {
      if (states_.count(s.id)) continue;
      if (std::none_of(missing.begin(), missing.end(),
                       [&](const Sample* m) { return m->id == s.id; }))
        missing.push_back(&s);
    }
  }
  if (missing.empty()) return;

  std::vector<States> computed(missing.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(missing.size()); ++i) {
    try {
      computed[i] = sample_states(*missing[i], enc, prop);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::lock_guard lock(mutex_);
  for (size_t i = 0; i < missing.size(); ++i) states_.emplace(missing[i]->id, std::move(computed[i]));
}

const RhoCache::States& RhoCache::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = states_.find(id);
  if (it == states_.end()) throw std::out_of_range("RhoCache: no states for id '" + id + "'");
  return it->second;
}

bool RhoCache::contains(const std::string& id) const {
  std::lock_guard lock(mutex_);
  return states_.count(id) != 0;
}

size_t RhoCache::size() const {
  std::lock_guard lock(mutex_);
  return states_.size();
}

void RhoCache::clear() {
  std::lock_guard lock(mutex_);
  states_.clear();
}

// ---------------------------------------------------------------------------
// Gram assembly

namespace {

KernelMatrix gram_impl(std::span<const Sample> samples_a, std::span<const Sample> samples_b,
                       const EncodingConfig& enc, const Propagator& prop, RhoCache& cache,
                       bool parallel) {
  cache.ensure(samples_a, enc, prop);
  cache.ensure(samples_b, enc, prop);

  KernelMatrix gram;
  for (const auto& s : samples_a) gram.row_ids.push_back(s.id);
  for (const auto& s : samples_b) gram.col_ids.push_back(s.id);
  const long rows = static_cast<long>(samples_a.size());
  const long cols = static_cast<long>(samples_b.size());
  gram.entries.resize(rows, cols);

  const bool symmetric = gram.square();
  std::vector<const RhoCache::States*> row_states(rows), col_states(cols);
  for (long i = 0; i < rows; ++i) row_states[i] = &cache.get(samples_a[i].id);
  for (long j = 0; j < cols; ++j) col_states[j] = &cache.get(samples_b[j].id);

  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < rows; ++i) {
    try {
      for (long j = symmetric ? i : 0; j < cols; ++j)
        gram.entries(i, j) = kernel_entry(*row_states[i], *col_states[j]);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  if (symmetric)
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < i; ++j) gram.entries(i, j) = gram.entries(j, i);
  return gram;
}

}  // namespace

KernelMatrix gram_matrix(std::span<const Sample> samples_a, std::span<const Sample> samples_b,
                         const EncodingConfig& enc, const Propagator& prop, RhoCache& cache) {
  return gram_impl(samples_a, samples_b, enc, prop, cache, true);
}

KernelMatrix gram_matrix_serial(std::span<const Sample> samples_a,
                                std::span<const Sample> samples_b, const EncodingConfig& enc,
                                const Propagator& prop, RhoCache& cache) {
  return gram_impl(samples_a, samples_b, enc, prop, cache, false);
}

// ---------------------------------------------------------------------------
// Serialization

std::string KernelMatrix::to_csv() const {
  std::ostringstream out;
  out << "row_id,col_id,value\n";
  for (long i = 0; i < entries.rows(); ++i)
    for (long j = 0; j < entries.cols(); ++j)
      out << row_ids[i] << ',' << col_ids[j] << ',' << format_double(entries(i, j)) << '\n';
  return out.str();
}

std::string KernelMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["row_ids"] = row_ids;
  j["col_ids"] = col_ids;
  auto rows = nlohmann::ordered_json::array();
  for (long i = 0; i < entries.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (long k = 0; k < entries.cols(); ++k) row.push_back(entries(i, k));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j.dump(2);
}

KernelMatrix KernelMatrix::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  KernelMatrix gram;
  gram.row_ids = j.at("row_ids").get<std::vector<std::string>>();
  gram.col_ids = j.at("col_ids").get<std::vector<std::string>>();
  gram.entries.resize(static_cast<long>(gram.row_ids.size()),
                      static_cast<long>(gram.col_ids.size()));
  const auto& rows = j.at("entries");
  for (long i = 0; i < gram.entries.rows(); ++i)
    for (long k = 0; k < gram.entries.cols(); ++k)
      gram.entries(i, k) = rows.at(i).at(k).get<double>();
  return gram;
}

}  // namespace mbark
