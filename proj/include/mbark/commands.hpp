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

#ifndef MBARK_COMMANDS_HPP
#define MBARK_COMMANDS_HPP

#include <filesystem>

#include "mbark/config.hpp"

namespace mbark {

struct CommandContext {
  std::filesystem::path out_dir;
  std::optional<uint64_t> seed_override;
};

/// Fig.-2 style demo: per (n, K) pair writes a fidelity / log-negativity
/// trajectory CSV plus the pulse envelopes.
void cmd_entangle(const RunConfig& cfg, const CommandContext& ctx);

/// Mesh simulation and labeling; writes dataset.csv.
void cmd_dataset(const RunConfig& cfg, const CommandContext& ctx);

/// Full square Gram over the dataset points; reads dataset.csv, writes
/// gram.csv and gram.json.
void cmd_gram(const RunConfig& cfg, const CommandContext& ctx);

/// Training-size sweep on the upstream dataset + Gram, plus an optional
/// in-memory Kerr sweep; writes accuracy tables.
void cmd_train(const RunConfig& cfg, const CommandContext& ctx);

/// Qubit-equivalent counts and single-threaded kernel-entry timings.
void cmd_scaling(const RunConfig& cfg, const CommandContext& ctx);

// Shared pieces, exposed for tests and the acceptance suite.

struct EntangleTrajectory {
  std::vector<double> times;
  std::vector<double> fidelity;        // F(rho_R, rho_t)
  std::vector<double> log_negativity;  // NaN for single-mode devices
  double t_r = 0.0;
};

/// Runs the Fig.-2 drive for `n_modes` of `base_device` at Kerr strength
/// `kerr`, snapshotting on `times` (all > end of pulses).
EntangleTrajectory entangle_trajectory(const DeviceParams& base_device, int n_modes, double kerr,
                                       const EntangleBlock& blk, const PropagatorConfig& prop,
                                       std::span<const double> times);

/// Equally spaced snapshot grid on [t_r, t_max].
std::vector<double> snapshot_grid(double t_r, double t_max, int count);

/// Dataset points recovered from a dataset.csv written by cmd_dataset
/// (ids are positional: m0.., then ref1, ref2).
LabeledDataset dataset_from_csv(const std::string& csv);

DeviceParams device_with_kerr(const DeviceParams& base, double kerr);

/// One tuned quantum-kernel model and one tuned RBF model for the same
/// training subset, both scored on the whole dataset. The extended C grid is
/// appended for the quantum kernel when requested (the zero-Kerr limit).
struct TunedPair {
  TuneResult quantum;
  TuneResult rbf;
};

TunedPair tune_both(const LabeledDataset& ds, const RMat& gram, std::span<const int> train_idx,
                    const GridSpec& grids, bool quantum_extended_c);

}  // namespace mbark

#endif  // MBARK_COMMANDS_HPP
