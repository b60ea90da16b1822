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

#ifndef MBARK_KERNEL_HPP
#define MBARK_KERNEL_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "mbark/dynamics.hpp"

namespace mbark {

struct EncodingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Linear feature-to-schedule map: Omega_j = Omega_min + (Omega_max-Omega_min) x_j
/// and T_j = T_min + (T_max-T_min) x_j, one simultaneous pulse per feature.
struct EncodingConfig {
  double omega_min = 0.0;  // rad/us
  double omega_max = 0.0;  // rad/us
  double t_min = 0.0;      // us
  double t_max = 0.0;      // us
  double sigma = 0.0;      // us
  double center = 0.0;     // us; 0 means 3*sigma
  std::vector<double> drive_detunings;  // rad/us; empty = device mode detunings

  double pulse_center() const { return center > 0.0 ? center : 3.0 * sigma; }
  void validate(const DeviceParams& device) const;
};

struct Sample {
  std::string id;
  std::vector<double> features;  // each in [0, 1]
};

/// Per-sample interaction-picture snapshot lists, keyed by sample id.
/// Single writer per key; reads share. ensure() simulates all missing ids
/// (in parallel outside of other parallel regions) before any read.
class RhoCache {
 public:
  using States = std::vector<DensityMatrix>;

  void ensure(std::span<const Sample> samples, const EncodingConfig& enc, const Propagator& prop);
  const States& get(const std::string& id) const;
  bool contains(const std::string& id) const;
  size_t size() const;
  void clear();

 private:
  std::map<std::string, States> states_;
  mutable std::mutex mutex_;
};

struct KernelMatrix {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  RMat entries;

  bool square() const { return row_ids == col_ids; }
  std::string to_csv() const;          // row_id,col_id,value
  std::string to_json() const;         // ids + dense entries
  static KernelMatrix from_json(const std::string& text);
};

DriveSchedule encode_sample(const Sample& x, const EncodingConfig& enc, const DeviceParams& device);

/// Snapshot l is the joint reduced state of all resonator modes at time T_l,
/// ordered by feature index (not by time).
std::vector<DensityMatrix> sample_states(const Sample& x, const EncodingConfig& enc,
                                         const Propagator& prop);

/// prod_l F(rho1_l, rho2_l), clipped to [0, 1].
double kernel_entry(std::span<const DensityMatrix> rhos1, std::span<const DensityMatrix> rhos2);

KernelMatrix gram_matrix(std::span<const Sample> samples_a, std::span<const Sample> samples_b,
                         const EncodingConfig& enc, const Propagator& prop, RhoCache& cache);

/// Serial reference implementation (identical output; kept for tests and the
/// parallel benchmark).
KernelMatrix gram_matrix_serial(std::span<const Sample> samples_a,
                                std::span<const Sample> samples_b, const EncodingConfig& enc,
                                const Propagator& prop, RhoCache& cache);

}  // namespace mbark

#endif  // MBARK_KERNEL_HPP
