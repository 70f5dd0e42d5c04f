// Copyright 2026 The uaslab Authors
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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "uaslab/config.hpp"
#include "uaslab/errors.hpp"
#include "uaslab/experiments.hpp"
#include "uaslab/selfcheck.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string config_path;
  std::size_t jobs = 1;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts->config_path, "experiment config file");
  if (config_required) c->required();
  cmd->add_option("--jobs", opts->jobs, "worker threads for independent trials")
      ->default_val(1);
  cmd->add_option("--out", opts->out, "output path base (overrides the config)");
  cmd->add_option("--seed", opts->seed, "seed override (beats config and UASLAB_SEED)");
}

// Seed priority: --seed flag, then the config's seed key, then UASLAB_SEED,
// then 0.
void resolve_seed(uaslab::ExperimentConfig& cfg, const CommonOpts& opts) {
  if (opts.seed.has_value()) {
    cfg.seed = *opts.seed;
    return;
  }
  if (cfg.has_seed) return;
  if (const char* env = std::getenv("UASLAB_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw uaslab::config_error("UASLAB_SEED is not a nonnegative integer");
    }
  }
}

int run_experiment_command(const CommonOpts& opts,
                           uaslab::ExperimentKind expected) {
  uaslab::ExperimentConfig cfg = uaslab::load_config_file(opts.config_path);
  if (cfg.kind != expected) {
    throw uaslab::config_error(std::string("config experiment kind '") +
                               uaslab::to_string(cfg.kind) +
                               "' does not match the subcommand");
  }
  resolve_seed(cfg, opts);
  const int code = uaslab::execute_experiment(cfg, opts.jobs, opts.out);
  if (code == kExitOk) {
    std::cout << "ok: " << cfg.name << "\n";
  } else {
    std::cerr << "invariant violation in experiment '" << cfg.name
              << "' (see the JSON summary)\n";
  }
  return code;
}

int run_eval_bounds(const CommonOpts& opts) {
  uaslab::ExperimentConfig cfg = uaslab::load_config_file(opts.config_path);
  std::cout << uaslab::render_bounds_report(cfg);
  return kExitOk;
}

int run_selfcheck_command(const CommonOpts& opts, std::size_t cases) {
  std::uint64_t seed = 0;
  if (!opts.config_path.empty()) {
    uaslab::ExperimentConfig cfg = uaslab::load_config_file(opts.config_path);
    seed = cfg.seed;
  }
  if (opts.seed.has_value()) {
    seed = *opts.seed;
  } else if (const char* env = std::getenv("UASLAB_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      throw uaslab::config_error("UASLAB_SEED is not a nonnegative integer");
    }
  }
  const auto results = uaslab::run_selfcheck(seed, cases);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS" : "FAIL") << " " << r.name << " ("
              << r.cases << " cases";
    if (!r.passed()) std::cout << ", " << r.failures << " failures: " << r.detail;
    std::cout << ")\n";
    ok = ok && r.passed();
  }
  return ok ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uaslab: argument-stability and risk experiments for projected subgradient methods"};
  app.require_subcommand(1);

  CommonOpts stability_opts;
  CommonOpts lower_opts;
  CommonOpts risk_opts;
  CommonOpts multipass_opts;
  CommonOpts dp_opts;
  CommonOpts bounds_opts;
  CommonOpts selfcheck_opts;
  std::size_t selfcheck_cases = 10000;

  auto* cmd_stability = app.add_subcommand(
      "run-stability", "coupled-trajectory stability estimate for one neighbor pair");
  add_common(cmd_stability, &stability_opts, true);

  auto* cmd_lower = app.add_subcommand(
      "run-lowerbound", "adversarial lower-bound construction runs");
  add_common(cmd_lower, &lower_opts, true);

  auto* cmd_risk = app.add_subcommand(
      "run-risk", "risk decomposition and excess-risk measurement");
  add_common(cmd_risk, &risk_opts, true);

  auto* cmd_multipass = app.add_subcommand(
      "run-multipass", "multi-pass SGD generalization gap measurement");
  add_common(cmd_multipass, &multipass_opts, true);

  auto* cmd_dp = app.add_subcommand(
      "run-dp", "noisy-SGD private optimization risk experiment");
  add_common(cmd_dp, &dp_opts, true);

  auto* cmd_bounds = app.add_subcommand(
      "eval-bounds", "print every closed-form bound for the config's parameters");
  add_common(cmd_bounds, &bounds_opts, true);

  auto* cmd_selfcheck = app.add_subcommand(
      "selfcheck", "run the full property suite");
  add_common(cmd_selfcheck, &selfcheck_opts, false);
  cmd_selfcheck->add_option("--cases", selfcheck_cases, "random cases per property")
      ->default_val(10000);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_stability->parsed()) {
      return run_experiment_command(stability_opts, uaslab::ExperimentKind::stability);
    }
    if (cmd_lower->parsed()) {
      return run_experiment_command(lower_opts, uaslab::ExperimentKind::lower_bound);
    }
    if (cmd_risk->parsed()) {
      return run_experiment_command(risk_opts, uaslab::ExperimentKind::risk);
    }
    if (cmd_multipass->parsed()) {
      return run_experiment_command(multipass_opts, uaslab::ExperimentKind::multipass);
    }
    if (cmd_dp->parsed()) {
      return run_experiment_command(dp_opts, uaslab::ExperimentKind::dp);
    }
    if (cmd_bounds->parsed()) {
      return run_eval_bounds(bounds_opts);
    }
    if (cmd_selfcheck->parsed()) {
      return run_selfcheck_command(selfcheck_opts, selfcheck_cases);
    }
  } catch (const uaslab::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const uaslab::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const uaslab::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}
