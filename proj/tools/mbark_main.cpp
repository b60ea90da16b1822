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

#include <iostream>

#include <CLI11.hpp>

#include "mbark/commands.hpp"
#include "mbark/parallel.hpp"
#include "mbark/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum-kernel simulator for a Kerr qubit coupled to multimode acoustic resonators"};
  app.set_version_flag("--version", mbark::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  int64_t seed = -1;

  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", seed, "Override the experiment seed");

  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(const mbark::RunConfig&, const mbark::CommandContext&);
  };
  const Cmd cmds[] = {
      {"entangle", "Kerr-induced entanglement demo: fidelity and log-negativity trajectories",
       mbark::cmd_entangle},
      {"dataset", "Generate and label the synthetic mesh dataset", mbark::cmd_dataset},
      {"gram", "Compute the quantum-kernel Gram matrix over the dataset", mbark::cmd_gram},
      {"train", "Train and tune kernel SVMs against the RBF baseline", mbark::cmd_train},
      {"scaling", "Time single kernel entries as the mode count grows", mbark::cmd_scaling},
  };
  for (const auto& c : cmds) app.add_subcommand(c.name, c.help);

  CLI11_PARSE(app, argc, argv);

  mbark::set_global_threads(threads > 0 ? threads : mbark::max_threads());

  mbark::CommandContext ctx;
  ctx.out_dir = out_dir;
  if (seed >= 0) ctx.seed_override = static_cast<uint64_t>(seed);

  try {
    const mbark::RunConfig cfg = mbark::RunConfig::from_file(config_path);
    for (const auto& c : cmds)
      if (app.get_subcommand(c.name)->parsed()) {
        c.fn(cfg, ctx);
        return 0;
      }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
