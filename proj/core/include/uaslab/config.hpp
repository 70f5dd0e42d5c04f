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

#ifndef UASLAB_CONFIG_HPP_
#define UASLAB_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>

#include "uaslab/losses.hpp"
#include "uaslab/optimizers.hpp"

namespace uaslab {

enum class ExperimentKind { stability, lower_bound, risk, multipass, dp };

const char* to_string(ExperimentKind kind);

// Parsed, defaulted and validated experiment description. Config text is a
// flat `key = value` file; '#' starts a comment, keys may appear once, and
// unknown keys are rejected. One config describes one experiment.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::stability;
  std::string name;  // experiment id column; defaults to the kind

  Algorithm algorithm = Algorithm::gd;
  std::string variant;  // lower-bound construction: "gd", "rsgd" or "persgd"

  std::size_t n = 0;
  std::size_t T = 0;
  std::size_t K = 0;
  std::size_t d = 0;
  double R = 1.0;
  double L = 0.0;  // 0 = take the oracle's Lipschitz constant

  StepSchedule schedule = StepSchedule::constant(0.1);
  bool eta_tuned = false;  // eta = tuned (risk / dp rules)

  LossFamily loss = LossFamily::hinge;
  std::size_t loss_active_dim = 0;
  double loss_nu = 0.0;
  double loss_kappa = 0.0;
  std::string pair_kind = "random";  // "random" | "canonical"

  std::string dist;  // "absolute-deviation" | "hinge-mixture"
  double dist_p = 0.75;

  double alpha = 1.0;
  double beta = 0.0;   // 0 = default rule 1/n^2
  double sigma = -1.0;  // >= 0 overrides calibration (nsgd / dp)

  std::uint64_t seed = 0;
  bool has_seed = false;  // whether the config supplied one
  std::size_t trials = 1;
  std::size_t fresh_sample = 0;  // 0 = default 10n
  std::size_t erm_steps = 100000;

  std::string out;
  bool bound_overlay = true;

  std::map<std::string, std::string> raw;  // echoed into the summary
};

// Throws config_error on unknown keys, type mismatches or violated
// preconditions (each message names the violated hypothesis).
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace uaslab

#endif  // UASLAB_CONFIG_HPP_
