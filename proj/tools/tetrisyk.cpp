// Copyright 2026 The tetrisyk Authors
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

// Command-line experiment runner.
//
//   tetrisyk run --config configs/loschmidt_scan.json [--out DIR] [--workers W] [--seed-override S]
//   tetrisyk loschmidt_scan --config ...      (kind must match the config)
//   tetrisyk resources --L 50 --L 100
//   tetrisyk validate --config ...
//
// Exit codes: 0 ok, 1 runtime failure, 2 validation error, 3 capability error.

#include <iomanip>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "tetrisyk/errors.hpp"
#include "tetrisyk/experiment.hpp"
#include "tetrisyk/resources.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCapability = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
  std::string out;
  bool fresh = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* opt = cmd->add_option("--config", flags.config, "Experiment configuration (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--seed-override", flags.seed_override, "Replace the disorder and circuit seeds");
  cmd->add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out, "Output directory (defaults to the config's output)");
  cmd->add_flag("--fresh", flags.fresh, "Ignore an existing manifest instead of resuming");
}

tetrisyk::ExperimentConfig load(const CommonFlags& flags) {
  auto config = tetrisyk::load_config(flags.config);
  if (flags.seed_override) config.override_seed(*flags.seed_override);
  return config;
}

int run(const tetrisyk::ExperimentConfig& config, const CommonFlags& flags) {
  tetrisyk::RunOptions options;
  options.out_dir = flags.out.empty() ? std::filesystem::path(config.output) : std::filesystem::path(flags.out);
  options.workers = flags.workers;
  options.resume = !flags.fresh;
  options.log = &std::cerr;
  const auto summary = tetrisyk::run_experiment(config, options);
  std::cout << "wrote " << summary.rows << " rows (" << summary.points << " points, " << summary.resumed_points
            << " resumed) to " << options.out_dir.string() << "\n";
  return kExitOk;
}

void print_resources(const std::vector<int>& qubits, double k, double depth_time, bool preset, double jt) {
  std::cout << std::left << std::setw(6) << "L" << std::setw(10) << "Jt" << std::setw(14) << "TQ gates"
            << std::setw(14) << "serial [h]" << std::setw(10) << "factor" << std::setw(14) << "parallel [h]"
            << "\n";
  for (int L : qubits) {
    tetrisyk::ResourceQuery q;
    q.num_qubits = L;
    q.sparsity_k = k;
    q.depth_time_s = depth_time;
    q.lyapunov_preset = preset;
    q.jt = jt;
    q.parallel = true;
    const auto tq = tetrisyk::otoc_tq_count(q);
    const auto rt = tetrisyk::runtime_estimate(q, tq);
    std::cout << std::left << std::setw(6) << L << std::setw(10) << std::setprecision(4)
              << (preset ? std::log(2.0 * L) : jt) << std::setw(14) << std::setprecision(3) << double(tq)
              << std::setw(14) << rt.serial_s / 3600 << std::setw(10) << rt.parallel_factor << std::setw(14)
              << rt.parallel_s / 3600 << "\n";
  }
  std::cout << "(" << tetrisyk::kEstimateLabel << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TETRIS simulation of the sparse SYK model"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by --config");
  add_common(run_cmd, flags, true);
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration and print it normalized");
  validate_cmd->add_option("--config", flags.config, "Experiment configuration (JSON)")->required();

  std::vector<std::pair<tetrisyk::ExperimentKind, CLI::App*>> kind_cmds;
  for (auto kind : tetrisyk::all_experiment_kinds()) {
    if (kind == tetrisyk::ExperimentKind::kResources) continue;
    auto* cmd = app.add_subcommand(tetrisyk::to_string(kind), "Run a config of kind " + tetrisyk::to_string(kind));
    add_common(cmd, flags, true);
    kind_cmds.emplace_back(kind, cmd);
  }

  std::vector<int> res_qubits{50, 100};
  double res_k = 2.3, res_depth = 30e-3, res_jt = 0.0;
  auto* res_cmd = app.add_subcommand("resources", "Closed-form OTOC gate and runtime estimates");
  add_common(res_cmd, flags, false);
  res_cmd->add_option("--L", res_qubits, "System qubit counts");
  res_cmd->add_option("--k", res_k, "Sparsity k");
  res_cmd->add_option("--depth-time", res_depth, "Seconds per circuit-depth unit");
  res_cmd->add_option("--jt", res_jt, "Fixed Jt instead of the Lyapunov preset Jt = ln(2L)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*validate_cmd) {
      std::cout << tetrisyk::to_json(tetrisyk::load_config(flags.config)).dump(2) << "\n";
      return kExitOk;
    }
    if (*run_cmd) return run(load(flags), flags);
    for (const auto& [kind, cmd] : kind_cmds) {
      if (!*cmd) continue;
      const auto config = load(flags);
      if (config.kind != kind) {
        throw tetrisyk::ConfigError("$.kind", "config is " + tetrisyk::to_string(config.kind) + ", subcommand is " +
                                                  tetrisyk::to_string(kind));
      }
      return run(config, flags);
    }
    if (*res_cmd) {
      if (!flags.config.empty()) {
        const auto config = load(flags);
        if (config.kind != tetrisyk::ExperimentKind::kResources) {
          throw tetrisyk::ConfigError("$.kind", "config is not a resources experiment");
        }
        print_resources(config.resource_qubits, config.syk.sparsity_k, config.depth_time_s, config.lyapunov_preset,
                        config.resource_jt);
        return run(config, flags);
      }
      print_resources(res_qubits, res_k, res_depth, res_cmd->count("--jt") == 0, res_jt);
      return kExitOk;
    }
  } catch (const tetrisyk::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const tetrisyk::ParameterError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
