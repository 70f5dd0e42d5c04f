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

#include <benchmark/benchmark.h>

#include "uaslab/optimizers.hpp"
#include "uaslab/stability.hpp"

using namespace uaslab;

namespace {

void BM_Project(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const Ball ball = make_origin_ball(d, 1.0);
  RngStream rng(1, 0);
  Vec x(d);
  for (double& v : x) v = 4.0 * rng.uniform01() - 2.0;
  Vec work = x;
  for (auto _ : state) {
    work = x;
    project_inplace(ball, work);
    benchmark::DoNotOptimize(work.data());
  }
}
BENCHMARK(BM_Project)->Arg(16)->Arg(256)->Arg(4096);

void BM_GaussianVector(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  RngStream rng(2, 0);
  Vec out(d, 0.0);
  for (auto _ : state) {
    gaussian_vector_inplace(rng, 1.5, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_GaussianVector)->Arg(16)->Arg(256)->Arg(4096);

void BM_EmpiricalSubgradient(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const LossOracle oracle = LossOracle::absolute_deviation();
  RngStream rng(3, 0);
  Dataset s(n);
  for (DataPoint& z : s) z.tag = 2.0 * rng.uniform01() - 1.0;
  Vec x{0.25, 0.0, 0.0};
  Vec g(3, 0.0);
  for (auto _ : state) {
    empirical_risk_subgradient_inplace(oracle, s, x, g);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_EmpiricalSubgradient)->Arg(16)->Arg(256)->Arg(4096);

void BM_CoupledRsgdRun(benchmark::State& state) {
  const std::size_t T = static_cast<std::size_t>(state.range(0));
  RngStream pair_rng(4, 0);
  const NeighborPair pair = make_random_pair(LossFamily::hinge, 10, pair_rng);
  RunSpec spec;
  spec.algorithm = Algorithm::rsgd;
  spec.T = T;
  spec.schedule = StepSchedule::constant(0.01);
  spec.ball = make_origin_ball(4, 5.0);
  spec.start = zeros(4);
  spec.rng = RngStream(5, 0);
  spec.iterate_cap = 0;
  const LossOracle oracle = LossOracle::hinge();
  for (auto _ : state) {
    TrajectoryPair run = run_coupled(spec, oracle, pair);
    benchmark::DoNotOptimize(run.deltas.data());
  }
}
BENCHMARK(BM_CoupledRsgdRun)->Arg(101)->Arg(1001);

void BM_AdversarialGdStep(benchmark::State& state) {
  const std::size_t D = static_cast<std::size_t>(state.range(0));
  const AdversarialInstance inst =
      make_adversarial_instance(1.0 / std::sqrt(static_cast<double>(D)),
                                D + 2, 10, D);
  Vec x(inst.ball.dim(), 0.0);
  for (std::size_t i = 0; i < D; ++i) x[i] = 0.5;
  Vec g(inst.ball.dim(), 0.0);
  for (auto _ : state) {
    empirical_risk_subgradient_inplace(inst.oracle, inst.pair.base(), x, g);
    benchmark::DoNotOptimize(g.data());
  }
}
BENCHMARK(BM_AdversarialGdStep)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
