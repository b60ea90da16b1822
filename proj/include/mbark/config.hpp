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

#ifndef MBARK_CONFIG_HPP
#define MBARK_CONFIG_HPP

#include <optional>

#include "mbark/bench.hpp"
#include "mbark/ml.hpp"

namespace mbark {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Explicit drive block for the entanglement demo: per-mode pulse amplitudes
/// and a snapshot grid, swept over Kerr strengths and mode counts.
struct EntangleBlock {
  std::vector<double> amplitudes;  // rad/us, one per mode of the largest n
  std::vector<double> kerr_sweep;  // rad/us
  std::vector<int> n_values;
  double sigma = 0.08;      // us
  double center = 0.0;      // us; 0 = 3*sigma
  double t_max = 10.0;      // us
  int snapshot_count = 400;
};

struct ExperimentBlock {
  uint64_t seed = 7;
  int mesh_resolution = 75;
  std::array<std::vector<double>, 2> references = {std::vector<double>{0.1, 0.04285},
                                                   std::vector<double>{0.7, 0.64285}};
  std::vector<int> training_sizes = {16, 64, 256};
  int sets_per_size = 3;
  std::vector<double> kerr_sweep;  // rad/us; empty = no sweep table
  int sets_per_kerr = 2;
  int sweep_training_size = 256;
  GridSpec grids = GridSpec::paper_default();
};

struct ScalingBlock {
  std::vector<int> n_values = {2, 3, 4};
  std::vector<int> n_dim_values = {6, 9, 12};
  ScalingProtocol protocol;
};

/// Fully parsed run configuration. Frequencies arrive in MHz and times in us
/// in the JSON; conversion to angular units happens here, once.
struct RunConfig {
  std::optional<DeviceParams> device;
  PropagatorConfig propagator;
  std::optional<EncodingConfig> encoding;
  std::optional<EntangleBlock> entangle;
  std::optional<ExperimentBlock> experiment;
  std::optional<ScalingBlock> scaling;
  std::string raw_json;  // config echo for manifests

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
};

}  // namespace mbark

#endif  // MBARK_CONFIG_HPP
