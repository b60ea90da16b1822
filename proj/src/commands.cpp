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

#include "mbark/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mbark/io.hpp"
#include "mbark/parallel.hpp"
#include "mbark/version.hpp"

namespace mbark {

namespace {

using nlohmann::ordered_json;

void write_manifest(const CommandContext& ctx, const std::string& command, const RunConfig& cfg,
                    ordered_json extra = ordered_json::object()) {
  ordered_json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["threads"] = max_threads();
  if (ctx.seed_override)
    m["seed_override"] = *ctx.seed_override;
  else
    m["seed_override"] = nullptr;
  m["config"] = nlohmann::ordered_json::parse(cfg.raw_json);
  for (auto& [k, v] : extra.items()) m[k] = v;
  atomic_write_file(ctx.out_dir / ("manifest_" + command + ".json"), m.dump(2) + "\n");
}

const ExperimentBlock& require_experiment(const RunConfig& cfg) {
  if (!cfg.experiment) throw ConfigError("config: this command requires an 'experiment' block");
  return *cfg.experiment;
}

const DeviceParams& require_device(const RunConfig& cfg) {
  if (!cfg.device) throw ConfigError("config: this command requires a 'device' block");
  return *cfg.device;
}

const EncodingConfig& require_encoding(const RunConfig& cfg) {
  if (!cfg.encoding) throw ConfigError("config: this command requires an 'encoding' block");
  return *cfg.encoding;
}

uint64_t effective_seed(const ExperimentBlock& exp, const CommandContext& ctx) {
  return ctx.seed_override ? *ctx.seed_override : exp.seed;
}

std::vector<Sample> reference_samples(const ExperimentBlock& exp) {
  return {{"ref1", exp.references[0]}, {"ref2", exp.references[1]}};
}

std::string kerr_tag(double kerr) { return format_double(angular_to_mhz(kerr)); }

}  // namespace

DeviceParams device_with_kerr(const DeviceParams& base, double kerr) {
  DeviceParams dev = base;
  dev.kerr = kerr;
  return dev;
}

std::vector<double> snapshot_grid(double t_r, double t_max, int count) {
  if (count < 2 || t_max <= t_r) throw std::invalid_argument("snapshot_grid: bad grid request");
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = t_r + (t_max - t_r) * k / (count - 1);
  return t;
}

// ---------------------------------------------------------------------------
// entangle

EntangleTrajectory entangle_trajectory(const DeviceParams& base_device, int n_modes, double kerr,
                                       const EntangleBlock& blk, const PropagatorConfig& prop,
                                       std::span<const double> times) {
  if (n_modes < 1 || n_modes > base_device.n_modes())
    throw std::invalid_argument("entangle_trajectory: n_modes out of range");

  DeviceParams dev;
  dev.layout = ModeLayout(std::vector<int>(base_device.layout.dims.begin(),
                                           base_device.layout.dims.begin() + n_modes + 1));
  dev.kerr = kerr;
  dev.delta_q = base_device.delta_q;
  dev.deltas.assign(base_device.deltas.begin(), base_device.deltas.begin() + n_modes);
  dev.couplings.assign(base_device.couplings.begin(), base_device.couplings.begin() + n_modes);

  DriveSchedule schedule;
  for (int i = 0; i < n_modes; ++i) {
    GaussianPulse p;
    p.amplitude = blk.amplitudes.at(i);
    p.drive_detuning = dev.deltas[i];
    p.width = blk.sigma;
    p.center = blk.center > 0.0 ? blk.center : 3.0 * blk.sigma;
    schedule.pulses.push_back(p);
  }
  schedule.measure_times.assign(times.begin(), times.end());

  const Propagator propagator(dev, prop);
  const TrajectoryResult traj = propagator.run_schedule(schedule);

  EntangleTrajectory out;
  out.t_r = traj.reference_time;
  const FidelityReference fref(traj.reference_state);
  const std::vector<int> first_mode{0};
  for (const auto& [t, rho] : traj.snapshots) {
    out.times.push_back(t);
    out.fidelity.push_back(fref.fidelity(rho));
    out.log_negativity.push_back(n_modes >= 2 ? log_negativity(rho, first_mode)
                                              : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

void cmd_entangle(const RunConfig& cfg, const CommandContext& ctx) {
  if (!cfg.entangle) throw ConfigError("config: entangle command requires an 'entangle' block");
  const EntangleBlock& blk = *cfg.entangle;
  const DeviceParams& device = require_device(cfg);
  if (static_cast<int>(blk.amplitudes.size()) > device.n_modes())
    throw ConfigError("entangle: more amplitudes than device modes");

  const double center = blk.center > 0.0 ? blk.center : 3.0 * blk.sigma;
  const double t_r = center + 3.0 * blk.sigma;
  const std::vector<double> times = snapshot_grid(t_r, blk.t_max, blk.snapshot_count);

  for (int n : blk.n_values) {
    // pulse envelopes, one file per mode count
    {
      std::ostringstream csv;
      csv << "t_us";
      for (int i = 1; i <= n; ++i) csv << ",omega_" << i << "_mhz";
      csv << '\n';
      for (int k = 0; k <= 200; ++k) {
        const double t = t_r * k / 200.0;
        csv << format_double(t);
        for (int i = 0; i < n; ++i) {
          GaussianPulse p;
          p.amplitude = blk.amplitudes.at(i);
          p.width = blk.sigma;
          p.center = center;
          csv << ',' << format_double(angular_to_mhz(pulse_envelope(p, t)));
        }
        csv << '\n';
      }
      atomic_write_file(ctx.out_dir / ("pulses_n" + std::to_string(n) + ".csv"), csv.str());
    }

    for (double kerr : blk.kerr_sweep) {
      const EntangleTrajectory traj =
          entangle_trajectory(device, n, kerr, blk, cfg.propagator, times);
      std::ostringstream csv;
      csv << "t_us,fidelity,log_negativity\n";
      for (size_t k = 0; k < traj.times.size(); ++k)
        csv << format_double(traj.times[k]) << ',' << format_double(traj.fidelity[k]) << ','
            << format_double(traj.log_negativity[k]) << '\n';
      atomic_write_file(
          ctx.out_dir / ("entangle_n" + std::to_string(n) + "_kerr" + kerr_tag(kerr) + ".csv"),
          csv.str());
    }
  }
  write_manifest(ctx, "entangle", cfg, {{"t_r_us", t_r}});
}

// ---------------------------------------------------------------------------
// dataset

void cmd_dataset(const RunConfig& cfg, const CommandContext& ctx) {
  const ExperimentBlock& exp = require_experiment(cfg);
  const EncodingConfig& enc = require_encoding(cfg);

  const std::vector<Sample> mesh = make_mesh(exp.mesh_resolution);
  const auto refs = reference_samples(exp);
  const Propagator prop(require_device(cfg), cfg.propagator);
  RhoCache cache;
  LabeledDataset ds = generate_labels(mesh, refs[0], refs[1], enc, prop, cache);
  ds.seed = effective_seed(exp, ctx);

  atomic_write_file(ctx.out_dir / "dataset.csv", ds.to_csv());
  write_manifest(ctx, "dataset", cfg,
                 {{"seed", ds.seed},
                  {"mesh_resolution", exp.mesh_resolution},
                  {"unique_samples", cache.size()}});
}

LabeledDataset dataset_from_csv(const std::string& csv) {
  LabeledDataset ds;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "x1,x2,label")
    throw std::runtime_error("dataset_from_csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string x1, x2, label;
    if (!std::getline(row, x1, ',') || !std::getline(row, x2, ',') || !std::getline(row, label))
      throw std::runtime_error("dataset_from_csv: malformed row: " + line);
    ds.points.push_back({"", {std::stod(x1), std::stod(x2)}});
    ds.labels.push_back(std::stoi(label));
  }
  if (ds.points.size() < 3) throw std::runtime_error("dataset_from_csv: too few rows");
  ds.mesh_size = static_cast<int>(ds.points.size()) - 2;
  ds.mesh_resolution = static_cast<int>(std::lround(std::sqrt(double(ds.mesh_size))));
  for (int i = 0; i < ds.mesh_size; ++i) ds.points[i].id = "m" + std::to_string(i);
  ds.points[ds.mesh_size].id = "ref1";
  ds.points[ds.mesh_size + 1].id = "ref2";
  ds.validate();
  return ds;
}

// ---------------------------------------------------------------------------
// gram

void cmd_gram(const RunConfig& cfg, const CommandContext& ctx) {
  const EncodingConfig& enc = require_encoding(cfg);
  const LabeledDataset ds = dataset_from_csv(read_required_artifact(ctx.out_dir / "dataset.csv"));

  const Propagator prop(require_device(cfg), cfg.propagator);
  RhoCache cache;
  const KernelMatrix gram = gram_matrix(ds.points, ds.points, enc, prop, cache);

  atomic_write_file(ctx.out_dir / "gram.csv", gram.to_csv());
  atomic_write_file(ctx.out_dir / "gram.json", gram.to_json());
  write_manifest(ctx, "gram", cfg, {{"points", ds.points.size()}});
}

// ---------------------------------------------------------------------------
// train

TunedPair tune_both(const LabeledDataset& ds, const RMat& gram,
                    std::span<const int> train_idx, const GridSpec& grids,
                    bool quantum_extended_c) {
  std::vector<int> eval_idx(ds.points.size());
  std::iota(eval_idx.begin(), eval_idx.end(), 0);

  std::vector<double> c_grid = grids.c_grid;
  if (quantum_extended_c) {
    c_grid.insert(c_grid.end(), grids.extended_c_grid.begin(), grids.extended_c_grid.end());
    std::sort(c_grid.begin(), c_grid.end());
  }

  TunedPair out;
  out.quantum = tune_precomputed(gram, ds.labels, train_idx, eval_idx, c_grid);
  out.rbf = tune_rbf(ds.points, ds.labels, train_idx, eval_idx, grids.c_grid, grids.gamma_grid);
  return out;
}

namespace {

struct AccuracyTable {
  std::ostringstream csv;
  explicit AccuracyTable(const std::string& key_column) {
    csv << key_column << ",seed,kernel,c,gamma,accuracy\n";
  }
  void row(const std::string& key, const std::string& seed, const std::string& kernel,
           const TuneResult& r) {
    csv << key << ',' << seed << ',' << kernel << ',' << format_double(r.c) << ','
        << format_double(r.gamma) << ',' << format_double(r.accuracy) << '\n';
  }
  void mean_rows(const std::string& key, double q_acc, double r_acc) {
    csv << key << ",mean,quantum,,," << format_double(q_acc) << '\n';
    csv << key << ",mean,rbf,,," << format_double(r_acc) << '\n';
  }
};

}  // namespace

void cmd_train(const RunConfig& cfg, const CommandContext& ctx) {
  const ExperimentBlock& exp = require_experiment(cfg);
  const EncodingConfig& enc = require_encoding(cfg);
  const uint64_t seed = effective_seed(exp, ctx);

  // size sweep on the upstream artifacts
  const LabeledDataset ds = dataset_from_csv(read_required_artifact(ctx.out_dir / "dataset.csv"));
  const KernelMatrix gram =
      KernelMatrix::from_json(read_required_artifact(ctx.out_dir / "gram.json"));
  if (gram.entries.rows() != static_cast<long>(ds.points.size()))
    throw std::runtime_error("cmd_train: gram.json does not match dataset.csv");

  const bool extended_c = require_device(cfg).kerr == 0.0;
  AccuracyTable by_size("train_size");
  for (size_t si = 0; si < exp.training_sizes.size(); ++si) {
    const int size = exp.training_sizes[si];
    double q_sum = 0.0, r_sum = 0.0;
    for (int rep = 0; rep < exp.sets_per_size; ++rep) {
      const uint64_t s = seed + 1000 * si + rep;
      const auto train_idx = sample_training(ds, size, s);
      const TunedPair pair = tune_both(ds, gram.entries, train_idx, exp.grids, extended_c);
      by_size.row(std::to_string(size), std::to_string(s), "quantum", pair.quantum);
      by_size.row(std::to_string(size), std::to_string(s), "rbf", pair.rbf);
      q_sum += pair.quantum.accuracy;
      r_sum += pair.rbf.accuracy;
    }
    by_size.mean_rows(std::to_string(size), q_sum / exp.sets_per_size, r_sum / exp.sets_per_size);
  }
  atomic_write_file(ctx.out_dir / "accuracy_by_size.csv", by_size.csv.str());

  // Kerr sweep regenerates dataset + Gram per point (each written out for
  // reproducibility), training size fixed.
  if (!exp.kerr_sweep.empty()) {
    const std::vector<Sample> mesh = make_mesh(exp.mesh_resolution);
    const auto refs = reference_samples(cfg.experiment.value());
    AccuracyTable by_kerr("kerr_mhz");
    for (double kerr : exp.kerr_sweep) {
      const DeviceParams dev = device_with_kerr(require_device(cfg), kerr);
      const Propagator prop(dev, cfg.propagator);
      RhoCache cache;
      LabeledDataset kds = generate_labels(mesh, refs[0], refs[1], enc, prop, cache);
      kds.seed = seed;
      const KernelMatrix kgram = gram_matrix(kds.points, kds.points, enc, prop, cache);
      const auto subdir = ctx.out_dir / ("kerr_" + kerr_tag(kerr));
      atomic_write_file(subdir / "dataset.csv", kds.to_csv());
      atomic_write_file(subdir / "gram.json", kgram.to_json());

      double q_sum = 0.0, r_sum = 0.0;
      for (int rep = 0; rep < exp.sets_per_kerr; ++rep) {
        const uint64_t s = seed + 100000 + rep;
        const auto train_idx = sample_training(kds, exp.sweep_training_size, s);
        const TunedPair pair = tune_both(kds, kgram.entries, train_idx, exp.grids, kerr == 0.0);
        by_kerr.row(kerr_tag(kerr), std::to_string(s), "quantum", pair.quantum);
        by_kerr.row(kerr_tag(kerr), std::to_string(s), "rbf", pair.rbf);
        q_sum += pair.quantum.accuracy;
        r_sum += pair.rbf.accuracy;
      }
      by_kerr.mean_rows(kerr_tag(kerr), q_sum / exp.sets_per_kerr, r_sum / exp.sets_per_kerr);
    }
    atomic_write_file(ctx.out_dir / "accuracy_by_kerr.csv", by_kerr.csv.str());
  }

  write_manifest(ctx, "train", cfg, {{"seed", seed}});
}

// ---------------------------------------------------------------------------
// scaling

namespace {

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("model name", 0) == 0) {
      const auto pos = line.find(':');
      if (pos != std::string::npos) return line.substr(pos + 2);
    }
  return "unknown";
}

}  // namespace

void cmd_scaling(const RunConfig& cfg, const CommandContext& ctx) {
  if (!cfg.scaling) throw ConfigError("config: scaling command requires a 'scaling' block");
  const ScalingBlock& blk = *cfg.scaling;

  std::ostringstream csv;
  csv << "n,n_dim,n_q,t_c_seconds,t_c_stddev,repeats\n";
  for (int n : blk.n_values)
    for (int n_dim : blk.n_dim_values) {
      const ScalingRow row = time_kernel_entry(n, n_dim, blk.protocol);
      csv << row.n << ',' << row.n_dim << ',' << row.n_q << ',' << format_double(row.t_c_seconds)
          << ',' << format_double(row.t_c_stddev) << ',' << row.repeats << '\n';
    }
  atomic_write_file(ctx.out_dir / "scaling.csv", csv.str());
  write_manifest(ctx, "scaling", cfg,
                 {{"cpu", cpu_model()},
                  {"compiler", __VERSION__},
                  {"config_hash", blk.protocol.config_hash()},
                  {"single_threaded_timing", true}});
}

}  // namespace mbark
