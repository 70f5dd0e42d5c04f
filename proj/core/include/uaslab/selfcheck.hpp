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

#ifndef UASLAB_SELFCHECK_HPP_
#define UASLAB_SELFCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "uaslab/optimizers.hpp"

namespace uaslab {

struct SelfCheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, when any
  bool passed() const { return failures == 0; }
};

// A randomly generated coupled-run instance: mixed algorithms, hinge /
// absolute-deviation / adversarial losses, random schedules and pairs.
struct RandomCoupledCase {
  RunSpec spec;
  LossOracle oracle;
  NeighborPair pair;
};

RandomCoupledCase make_random_coupled_case(RngStream& rng);

// Verifies the per-step deviation recurrence
//   delta_{t+1}^2 <= delta_t^2 + 4 L^2 eta_t^2 + 2 eta_t a_t delta_t + 1e-9
// and its closed-form consequence
//   delta_T <= 2 L sqrt(sum_{t>=t0} eta_t^2) + 2 sum_{t>t0} eta_t a_t + 1e-9
// on a recorded coupled run. Returns "" when every step passes.
std::string check_deviation_recurrence(const TrajectoryPair& run,
                                       const StepSchedule& schedule, double L);

// The full property suite: projection nonexpansiveness / idempotence, RNG
// reproducibility, loss Lipschitzness, subgradient convexity-inequality,
// subgradient monotonicity and determinism, the coupled-run recurrence over
// random instances, bound evaluator monotonicity and the risk decomposition
// identity. `cases` scales the pointwise properties.
std::vector<SelfCheckResult> run_selfcheck(std::uint64_t seed, std::size_t cases);

bool all_passed(const std::vector<SelfCheckResult>& results);

}  // namespace uaslab

#endif  // UASLAB_SELFCHECK_HPP_
