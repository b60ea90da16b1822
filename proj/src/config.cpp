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

#include "mbark/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "mbark/io.hpp"

namespace mbark {

namespace {

using nlohmann::json;

/// Strict object view: every key must be consumed exactly once.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  }

  ~StrictObject() = default;

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) throw ConfigError(path_ + ": missing required key '" + key + "'");
    return *v;
  }

  template <typename T>
  T get(const std::string& key) {
    try {
      return require(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    try {
      return v->get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
  }

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> mhz_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of MHz values");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(mhz_to_angular(v.get<double>()));
  return out;
}

DeviceParams parse_device(const json& j, const std::string& path) {
  StrictObject o(j, path);
  DeviceParams dev;
  const int qubit_dim = o.get_or<int>("qubit_dim", 4);
  const auto mode_dims = o.get<std::vector<int>>("resonator_dims");
  std::vector<int> dims{qubit_dim};
  dims.insert(dims.end(), mode_dims.begin(), mode_dims.end());
  dev.layout = ModeLayout(dims);
  dev.kerr = mhz_to_angular(o.get<double>("kerr_mhz"));
  dev.delta_q = mhz_to_angular(o.get<double>("delta_q_mhz"));
  dev.deltas = mhz_list(o.require("deltas_mhz"), path + ".deltas_mhz");
  const json* g = o.find("couplings_mhz");
  if (g) {
    dev.couplings = mhz_list(*g, path + ".couplings_mhz");
  } else {
    // shorthand: one shared coupling
    dev.couplings.assign(dev.deltas.size(), mhz_to_angular(o.get<double>("coupling_mhz")));
  }
  o.reject_unknown();
  dev.validate();
  return dev;
}

PropagatorConfig parse_propagator(const json& j, const std::string& path) {
  StrictObject o(j, path);
  PropagatorConfig cfg;
  cfg.rel_tol = o.get_or<double>("rel_tol", cfg.rel_tol);
  cfg.abs_tol = o.get_or<double>("abs_tol", cfg.abs_tol);
  cfg.dense_spectral_max_dim = o.get_or<int>("dense_spectral_max_dim", cfg.dense_spectral_max_dim);
  cfg.initial_step = o.get_or<double>("initial_step_us", cfg.initial_step);
  cfg.step_tol_fraction = o.get_or<double>("step_tol_fraction", cfg.step_tol_fraction);
  cfg.max_steps = o.get_or<long>("max_steps", cfg.max_steps);
  cfg.krylov_max_dim = o.get_or<int>("krylov_max_dim", cfg.krylov_max_dim);
  o.reject_unknown();
  cfg.validate();
  return cfg;
}

EncodingConfig parse_encoding(const json& j, const std::string& path) {
  StrictObject o(j, path);
  EncodingConfig enc;
  enc.omega_min = mhz_to_angular(o.get<double>("omega_min_mhz"));
  enc.omega_max = mhz_to_angular(o.get<double>("omega_max_mhz"));
  enc.t_min = o.get<double>("t_min_us");
  enc.t_max = o.get<double>("t_max_us");
  enc.sigma = o.get<double>("sigma_us");
  enc.center = o.get_or<double>("center_us", 0.0);
  const json* d = o.find("drive_detunings_mhz");
  if (d) enc.drive_detunings = mhz_list(*d, path + ".drive_detunings_mhz");
  o.reject_unknown();
  return enc;
}

EntangleBlock parse_entangle(const json& j, const std::string& path) {
  StrictObject o(j, path);
  EntangleBlock blk;
  blk.amplitudes = mhz_list(o.require("amplitudes_mhz"), path + ".amplitudes_mhz");
  blk.kerr_sweep = mhz_list(o.require("kerr_sweep_mhz"), path + ".kerr_sweep_mhz");
  blk.n_values = o.get<std::vector<int>>("n_values");
  blk.sigma = o.get_or<double>("sigma_us", blk.sigma);
  blk.center = o.get_or<double>("center_us", 0.0);
  blk.t_max = o.get_or<double>("t_max_us", blk.t_max);
  blk.snapshot_count = o.get_or<int>("snapshot_count", blk.snapshot_count);
  o.reject_unknown();
  if (blk.n_values.empty() || blk.kerr_sweep.empty())
    throw ConfigError(path + ": n_values and kerr_sweep_mhz must be nonempty");
  for (int n : blk.n_values)
    if (n < 1 || n > static_cast<int>(blk.amplitudes.size()))
      throw ConfigError(path + ": n_values entries must be in [1, len(amplitudes_mhz)]");
  return blk;
}

std::vector<double> parse_grid(const json& j, const std::string& path) {
  StrictObject o(j, path);
  const int count = o.get<int>("count");
  const std::string kind = o.get<std::string>("spacing");
  std::vector<double> grid;
  if (count < 1) throw ConfigError(path + ": count must be >= 1");
  if (kind == "log10") {
    const double lo = o.get<double>("log10_min"), hi = o.get<double>("log10_max");
    for (int k = 0; k < count; ++k)
      grid.push_back(std::pow(10.0, count == 1 ? lo : lo + (hi - lo) * k / (count - 1)));
  } else if (kind == "linear") {
    const double lo = o.get<double>("min"), hi = o.get<double>("max");
    for (int k = 0; k < count; ++k)
      grid.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  } else {
    throw ConfigError(path + ".spacing: must be 'log10' or 'linear'");
  }
  o.reject_unknown();
  return grid;
}

ExperimentBlock parse_experiment(const json& j, const std::string& path) {
  StrictObject o(j, path);
  ExperimentBlock blk;
  blk.seed = o.get_or<uint64_t>("seed", blk.seed);
  blk.mesh_resolution = o.get_or<int>("mesh_resolution", blk.mesh_resolution);
  if (const json* r = o.find("references")) {
    const auto refs = r->get<std::array<std::vector<double>, 2>>();
    blk.references = refs;
  }
  blk.training_sizes = o.get_or<std::vector<int>>("training_sizes", blk.training_sizes);
  blk.sets_per_size = o.get_or<int>("sets_per_size", blk.sets_per_size);
  if (const json* k = o.find("kerr_sweep_mhz"))
    blk.kerr_sweep = mhz_list(*k, path + ".kerr_sweep_mhz");
  blk.sets_per_kerr = o.get_or<int>("sets_per_kerr", blk.sets_per_kerr);
  blk.sweep_training_size = o.get_or<int>("sweep_training_size", blk.sweep_training_size);
  if (const json* g = o.find("c_grid")) blk.grids.c_grid = parse_grid(*g, path + ".c_grid");
  if (const json* g = o.find("gamma_grid"))
    blk.grids.gamma_grid = parse_grid(*g, path + ".gamma_grid");
  if (const json* g = o.find("extended_c_grid"))
    blk.grids.extended_c_grid = parse_grid(*g, path + ".extended_c_grid");
  o.reject_unknown();
  blk.grids.validate();
  if (blk.mesh_resolution < 2) throw ConfigError(path + ": mesh_resolution must be >= 2");
  for (const auto& ref : blk.references)
    if (ref.size() != 2) throw ConfigError(path + ": references must be 2-dimensional");
  return blk;
}

ScalingBlock parse_scaling(const json& j, const std::string& path, const PropagatorConfig& prop) {
  StrictObject o(j, path);
  ScalingBlock blk;
  blk.protocol.propagator = prop;
  blk.n_values = o.get_or<std::vector<int>>("n_values", blk.n_values);
  blk.n_dim_values = o.get_or<std::vector<int>>("n_dim_values", blk.n_dim_values);
  blk.protocol.qubit_dim = o.get_or<int>("qubit_dim", blk.protocol.qubit_dim);
  if (const json* v = o.find("kerr_mhz")) blk.protocol.kerr = mhz_to_angular(v->get<double>());
  if (const json* v = o.find("delta_q_mhz"))
    blk.protocol.delta_q = mhz_to_angular(v->get<double>());
  if (const json* v = o.find("deltas_mhz"))
    blk.protocol.delta_pool = mhz_list(*v, path + ".deltas_mhz");
  if (const json* v = o.find("coupling_mhz")) blk.protocol.coupling = mhz_to_angular(v->get<double>());
  if (const json* v = o.find("amplitude_mhz"))
    blk.protocol.amplitude = mhz_to_angular(v->get<double>());
  blk.protocol.sigma = o.get_or<double>("sigma_us", blk.protocol.sigma);
  blk.protocol.measure_time = o.get_or<double>("measure_time_us", blk.protocol.measure_time);
  blk.protocol.repeats = o.get_or<int>("repeats", blk.protocol.repeats);
  o.reject_unknown();
  if (blk.n_values.empty() || blk.n_dim_values.empty())
    throw ConfigError(path + ": n_values and n_dim_values must be nonempty");
  return blk;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  StrictObject root(j, "config");
  RunConfig cfg;
  cfg.raw_json = text;
  if (const json* d = root.find("device")) cfg.device = parse_device(*d, "device");
  if (const json* p = root.find("propagator")) cfg.propagator = parse_propagator(*p, "propagator");
  if (const json* e = root.find("encoding")) cfg.encoding = parse_encoding(*e, "encoding");
  if (const json* e = root.find("entangle")) cfg.entangle = parse_entangle(*e, "entangle");
  if (const json* e = root.find("experiment")) cfg.experiment = parse_experiment(*e, "experiment");
  if (const json* s = root.find("scaling"))
    cfg.scaling = parse_scaling(*s, "scaling", cfg.propagator);
  root.reject_unknown();

  if (cfg.encoding) {
    if (!cfg.device) throw ConfigError("config: 'encoding' block requires a 'device' block");
    cfg.encoding->validate(*cfg.device);
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  return from_json_text(read_file(path));
}

}  // namespace mbark
