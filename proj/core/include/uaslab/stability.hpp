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

#ifndef UASLAB_STABILITY_HPP_
#define UASLAB_STABILITY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uaslab/losses.hpp"
#include "uaslab/optimizers.hpp"

namespace uaslab {

// Parameters of the closed-form argument-stability bounds. Step sums run over
// t = 1..T-1; explicit schedules must cover at least T-1 entries.
struct BoundInputs {
  double L = 1.0;
  double R = 1.0;
  std::size_t n = 1;
  std::size_t T = 1;
  StepSchedule schedule = StepSchedule::constant(0.1);
};

// Full-batch GD: min{2R, 4L((1/n) sum eta_t + sqrt(sum eta_t^2))}.
double bound_gd(const BoundInputs& b);

// With-replacement SGD, in expectation:
// min{2R, 4L(sqrt(sum eta_t^2) + (1/n) sum eta_t)}.
double bound_rsgd_expectation(const BoundInputs& b);

struct HighProbBound {
  double bound = 0.0;
  double failure_prob = 0.0;  // exp(-n/2)
};

// With-replacement SGD, per-realization with probability 1 - exp(-n/2):
// min{2R, 4L(eta sqrt(T-1) + eta (T-1)/n)}. Constant schedules only.
HighProbBound bound_rsgd_highprob(const BoundInputs& b);

// Fixed-permutation SGD (non-increasing steps):
// min{2R, 2L(sqrt(sum eta_t^2) + (2/n) sum eta_t)}.
double bound_persgd(const BoundInputs& b);

// With-replacement SGD for T <= n, in expectation:
// min{2R, 3L ((T-1)/n)(sqrt(sum eta_t^2) + (1/n) sum eta_t)}.
double bound_rsgd_small_T(const BoundInputs& b);

// Random-permutation SGD for T <= n, in expectation:
// min{2R, sqrt(2) L ((T-1)/n) sqrt(sum eta_t^2)}.
double bound_persgd_small_T(const BoundInputs& b);

// L*T*eta/n, the generic first-order stability floor, reported as a shape
// reference with constant 1 by convention. Constant schedules; T may be 0.
double generic_lower_floor(const BoundInputs& b);

// Empirical argument-stability estimate over coupled trials of one fixed
// neighbor pair. Trial i runs with stream (seed, stream_id + i).
struct UasEstimate {
  double mean_final_delta = 0.0;   // mean ||x^T - y^T||
  double mean_output_delta = 0.0;  // mean distance between averaged outputs
  std::map<std::string, double> final_quantiles;
  std::map<std::string, double> output_quantiles;
  std::vector<double> per_trial_final_deltas;
  std::vector<double> per_trial_output_deltas;
  std::vector<double> per_trial_max_deltas;
  std::size_t violations_of_bound = 0;  // vs the matching closed-form bound
  double reference_bound = 0.0;
  std::string reference_bound_kind;  // which closed form was compared
};

UasEstimate estimate_uas(const RunSpec& spec, const LossOracle& oracle,
                         const NeighborPair& pair, std::size_t trials,
                         std::size_t jobs = 1,
                         std::vector<TrajectoryPair>* keep_pairs = nullptr);

enum class LowerBoundVariant { gd_fullbatch, rsgd, persgd };

const char* to_string(LowerBoundVariant which);

// The adversarial instance shared by the lower-bound constructions, with the
// ledgered parameters D = min{T, floor(1/eta^2)}, kappa = max(sqrt(D),
// 100 T sqrt(D)) and nu = eta/(2 n kappa), on the unit ball with L = 1.
struct AdversarialInstance {
  LossOracle oracle;
  NeighborPair pair;
  Ball ball;
  std::size_t D = 0;
  double kappa = 0.0;
  double nu = 0.0;
};

// d = 0 picks the smallest admissible ambient dimension (d = D). Rejects
// d < D, naming the hypothesis d >= min{T, 1/eta^2}.
AdversarialInstance make_adversarial_instance(double eta, std::size_t T,
                                              std::size_t n, std::size_t d = 0);

struct LowerBoundReport {
  LowerBoundVariant which = LowerBoundVariant::gd_fullbatch;
  double eta = 0.0;
  std::size_t T = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t D = 0;
  double kappa = 0.0;
  double nu = 0.0;
  std::size_t trials = 0;
  double mean_final_delta = 0.0;
  double mean_output_delta = 0.0;
  // min{1, T/n} eta sqrt(T) + eta T / n, the asymptotic reference shape
  // (L = 1), reported for reference only.
  double reference_expression = 0.0;
  std::size_t probe_step = 0;  // min(D + 2, T)
  double probe_delta_first_trial = 0.0;
  std::vector<double> per_trial_final_deltas;
  std::vector<double> first_trial_delta_curve;  // delta_t for trial 0
};

// Runs the matching algorithm coupled on the canonical pair. GD is
// deterministic and always uses a single trial; the stochastic variants use
// trial-indexed streams (and, for persgd, a fresh uniform permutation per
// trial).
LowerBoundReport lower_bound_experiment(LowerBoundVariant which, double eta,
                                        std::size_t T, std::size_t n,
                                        std::size_t trials, std::size_t d = 0,
                                        std::uint64_t seed = 0,
                                        std::size_t jobs = 1);

}  // namespace uaslab

#endif  // UASLAB_STABILITY_HPP_
