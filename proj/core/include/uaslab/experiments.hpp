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

#ifndef UASLAB_EXPERIMENTS_HPP_
#define UASLAB_EXPERIMENTS_HPP_

#include <map>
#include <string>
#include <vector>

#include "uaslab/config.hpp"
#include "uaslab/table.hpp"

namespace uaslab {

struct ExperimentOutcome {
  ResultTable table;
  std::string summary_json;
  std::map<std::string, bool> invariants;  // name -> held
  std::vector<std::string> violations;
  bool invariants_ok = true;
};

// Dispatches a parsed config to its driver, collects the result table, runs
// the experiment's hard invariant checks and renders the JSON summary.
// (config, seed) determines every byte of the table and, apart from the
// optional timestamp header field, of the summary.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                 bool with_timestamp = true);

// Runs and writes "<out>.csv" / "<out>.json" (out_override beats cfg.out,
// which beats the experiment name). Returns the CLI exit code: 0 ok,
// 1 invariant violation.
int execute_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                       const std::string& out_override);

// The eval-bounds subcommand: every closed form computable from the config,
// as deterministic text.
std::string render_bounds_report(const ExperimentConfig& cfg);

}  // namespace uaslab

#endif  // UASLAB_EXPERIMENTS_HPP_
