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

#ifndef UASLAB_OPTIMIZERS_HPP_
#define UASLAB_OPTIMIZERS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uaslab/ball.hpp"
#include "uaslab/losses.hpp"
#include "uaslab/rng.hpp"
#include "uaslab/vec.hpp"

namespace uaslab {

enum class Algorithm { gd, rsgd, persgd, nsgd };

const char* to_string(Algorithm algorithm);

// Step sizes eta_t, t = 1..T. Either a single constant or an explicit list;
// entries must be finite and nonnegative (a degenerate all-zero schedule is
// allowed and freezes the trajectory at the start point).
class StepSchedule {
 public:
  static StepSchedule constant(double eta);
  static StepSchedule explicit_list(std::vector<double> etas);

  bool is_constant() const { return constant_; }

  // The constant step; throws for explicit lists.
  double constant_eta() const;

  // 1-based step index; explicit lists reject t past their length.
  double at(std::size_t t) const;

  // sum_{t=first..last} eta_t (inclusive; empty range yields 0).
  double sum(std::size_t first, std::size_t last) const;
  double sum_sq(std::size_t first, std::size_t last) const;

  bool non_increasing(std::size_t horizon) const;

  // 0 for constant schedules.
  std::size_t list_size() const { return etas_.size(); }

  // Explicit lists must provide at least min_len entries.
  void require_length(std::size_t min_len) const;

 private:
  StepSchedule() = default;

  bool constant_ = true;
  double eta_ = 0.0;
  std::vector<double> etas_;
};

struct NoiseSummary {
  std::size_t draws = 0;           // number of noise vectors consumed
  double mean_squared_norm = 0.0;  // average ||G_t||^2 over the run
};

// Everything one run needs except the data. `rng` carries the initial
// randomness state and is copied by the runners, so replaying the same spec
// reproduces the trajectory bit for bit.
struct RunSpec {
  Algorithm algorithm = Algorithm::gd;
  std::size_t T = 1;  // number of iterates x^1..x^T; updates run t = 1..T-1
  StepSchedule schedule = StepSchedule::constant(0.1);
  Ball ball;
  Vec start;                             // x^1, must lie in the ball
  std::vector<std::size_t> permutation;  // persgd: 0-based; empty = identity
  double sigma = 0.0;                    // nsgd noise standard deviation
  bool sigma_set = false;
  RngStream rng{0, 0};
  std::size_t iterate_cap = 1000000;  // stored iterates; averages stay exact
};

struct Trajectory {
  std::size_t T = 0;
  std::vector<Vec> iterates;  // first min(T, iterate_cap) iterates
  Vec final_iterate;
  // GD/rSGD: (sum_t eta_t x^t) / (sum_t eta_t); PerSGD: epoch-start iterates
  // weighted by per-epoch step sums; NSGD: plain mean of all iterates.
  Vec averaged_output;
  std::vector<std::uint32_t> sampled_indices;  // per update; empty for gd
  NoiseSummary noise;
};

// Two trajectories driven by the same randomness on neighboring datasets.
struct TrajectoryPair {
  Trajectory on_s;
  Trajectory on_sprime;
  std::vector<double> deltas;  // deltas[t-1] = ||x^t - y^t||, t = 1..T
  std::vector<double> a_ts;    // a_ts[t-1]  = ||g_t(x^t) - g'_t(x^t)||
  std::size_t t0 = 0;          // first update whose objectives differ; 0 = never
  double output_delta = 0.0;   // distance between the averaged outputs
  double max_delta = 0.0;      // max over t of deltas
};

// Validates a spec against an oracle and dataset size; throws
// std::invalid_argument naming the violated hypothesis.
void validate_run_spec(const RunSpec& spec, const LossOracle& oracle,
                       std::size_t n);

Trajectory run_gd(const RunSpec& spec, const LossOracle& oracle,
                  const Dataset& s);
Trajectory run_rsgd(const RunSpec& spec, const LossOracle& oracle,
                    const Dataset& s);
Trajectory run_persgd(const RunSpec& spec, const LossOracle& oracle,
                      const Dataset& s);
Trajectory run_nsgd(const RunSpec& spec, const LossOracle& oracle,
                    const Dataset& s);

// Dispatch on spec.algorithm.
Trajectory run_algorithm(const RunSpec& spec, const LossOracle& oracle,
                         const Dataset& s);

// Runs spec.algorithm on S and S' from the same start, replaying identical
// internal randomness (sampled indices, permutation, noise) in both runs;
// records delta_t and a_t per step. a_t is the distance between the two
// objectives' subgradients evaluated at the S-trajectory iterate.
TrajectoryPair run_coupled(const RunSpec& spec, const LossOracle& oracle,
                           const NeighborPair& pair);

}  // namespace uaslab

#endif  // UASLAB_OPTIMIZERS_HPP_
