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

#include "uaslab/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "uaslab/ball.hpp"
#include "uaslab/risk.hpp"
#include "uaslab/stability.hpp"

namespace uaslab {

namespace {

Vec random_vec(RngStream& rng, std::size_t d, double scale) {
  Vec x(d, 0.0);
  for (double& v : x) v = scale * (2.0 * rng.uniform01() - 1.0);
  return x;
}

LossOracle random_oracle(RngStream& rng, std::size_t d) {
  switch (rng.uniform_index(3)) {
    case 0:
      return LossOracle::hinge();
    case 1:
      return LossOracle::absolute_deviation();
    default: {
      const std::size_t D = 1 + rng.uniform_index(std::min<std::size_t>(d, 4));
      const double nu = 1e-4 + 0.1 * rng.uniform01();
      const double kappa =
          std::sqrt(static_cast<double>(D)) * (1.0 + 10.0 * rng.uniform01());
      return LossOracle::adversarial_max(D, nu, kappa);
    }
  }
}

DataPoint random_point_for(const LossOracle& oracle, RngStream& rng) {
  switch (oracle.family()) {
    case LossFamily::adversarial_max:
      return DataPoint{static_cast<double>(rng.uniform_index(2))};
    case LossFamily::hinge:
      return DataPoint{rng.uniform_index(2) == 0 ? -1.0 : 1.0};
    case LossFamily::absolute_deviation:
      return DataPoint{2.0 * rng.uniform01() - 1.0};
    case LossFamily::linear:
      return DataPoint{0.0};
  }
  return DataPoint{0.0};
}

struct Failure {
  std::size_t count = 0;
  std::string first;

  void record(const std::string& detail) {
    if (count == 0) first = detail;
    ++count;
  }
};

SelfCheckResult finish(const std::string& name, std::size_t cases,
                       const Failure& f) {
  SelfCheckResult r;
  r.name = name;
  r.cases = cases;
  r.failures = f.count;
  r.detail = f.first;
  return r;
}

SelfCheckResult check_projection_nonexpansive(std::uint64_t seed,
                                              std::size_t cases) {
  RngStream rng(seed, 101);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(8);
    Ball ball{random_vec(rng, d, 2.0), 0.1 + 3.0 * rng.uniform01()};
    const Vec x = random_vec(rng, d, 5.0);
    const Vec y = random_vec(rng, d, 5.0);
    const double lhs = distance(project(ball, x), project(ball, y));
    const double rhs = distance(x, y) + 1e-12;
    if (lhs > rhs) {
      std::ostringstream os;
      os << "case " << c << ": projected distance " << lhs << " > " << rhs;
      f.record(os.str());
    }
  }
  return finish("projection-nonexpansive", cases, f);
}

SelfCheckResult check_projection_idempotent(std::uint64_t seed,
                                            std::size_t cases) {
  RngStream rng(seed, 102);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(8);
    Ball ball{random_vec(rng, d, 2.0), 0.1 + 3.0 * rng.uniform01()};
    const Vec p = project(ball, random_vec(rng, d, 5.0));
    if (distance(project(ball, p), p) > 1e-12) {
      f.record("projection is not idempotent at case " + std::to_string(c));
    }
  }
  return finish("projection-idempotent", cases, f);
}

SelfCheckResult check_rng_reproducibility(std::uint64_t seed) {
  Failure f;
  RngStream a(seed, 7);
  RngStream b(seed, 7);
  for (std::size_t i = 0; i < 1000; ++i) {
    if (a.next_u64() != b.next_u64()) {
      f.record("u64 stream diverged at draw " + std::to_string(i));
      break;
    }
  }
  RngStream c(seed, 9);
  RngStream e(seed, 9);
  const Vec g1 = gaussian_vector(c, 64, 1.5);
  const Vec g2 = gaussian_vector(e, 64, 1.5);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    if (g1[i] != g2[i]) {
      f.record("gaussian stream diverged at entry " + std::to_string(i));
      break;
    }
  }
  return finish("rng-reproducibility", 1064, f);
}

SelfCheckResult check_lipschitz(std::uint64_t seed, std::size_t cases) {
  RngStream rng(seed, 103);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(6);
    const LossOracle oracle = random_oracle(rng, d);
    const DataPoint z = random_point_for(oracle, rng);
    const Vec x = random_vec(rng, d, 3.0);
    const Vec y = random_vec(rng, d, 3.0);
    const double lhs = std::abs(oracle.value(x, z) - oracle.value(y, z));
    const double rhs = oracle.lipschitz() * distance(x, y) + 1e-9;
    if (lhs > rhs) {
      f.record("Lipschitz violation at case " + std::to_string(c));
    }
  }
  return finish("loss-lipschitz", cases, f);
}

SelfCheckResult check_subgradient_inequality(std::uint64_t seed,
                                             std::size_t cases) {
  RngStream rng(seed, 104);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(6);
    const LossOracle oracle = random_oracle(rng, d);
    const DataPoint z = random_point_for(oracle, rng);
    const Vec x = random_vec(rng, d, 3.0);
    const Vec y = random_vec(rng, d, 3.0);
    const Vec g = oracle.subgradient(x, z);
    Vec diff = y;
    axpy(-1.0, x, diff);
    const double lhs = oracle.value(y, z);
    const double rhs = oracle.value(x, z) + dot(g, diff) - 1e-9;
    if (lhs < rhs) {
      f.record("convexity inequality violation at case " + std::to_string(c));
    }
    if (squared_norm(g) > oracle.lipschitz() * oracle.lipschitz() + 1e-9) {
      f.record("subgradient norm above L at case " + std::to_string(c));
    }
  }
  return finish("subgradient-convexity-inequality", cases, f);
}

SelfCheckResult check_monotonicity(std::uint64_t seed, std::size_t cases) {
  RngStream rng(seed, 105);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(6);
    const LossOracle oracle = random_oracle(rng, d);
    const DataPoint z = random_point_for(oracle, rng);
    const Vec x = random_vec(rng, d, 3.0);
    const Vec y = random_vec(rng, d, 3.0);
    const Vec gx = oracle.subgradient(x, z);
    const Vec gy = oracle.subgradient(y, z);
    Vec gdiff = gx;
    axpy(-1.0, gy, gdiff);
    Vec xdiff = x;
    axpy(-1.0, y, xdiff);
    if (dot(gdiff, xdiff) < -1e-9) {
      f.record("subgradient monotonicity violation at case " + std::to_string(c));
    }
  }
  return finish("subgradient-monotonicity", cases, f);
}

SelfCheckResult check_subgradient_determinism(std::uint64_t seed,
                                              std::size_t cases) {
  RngStream rng(seed, 106);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t d = 1 + rng.uniform_index(6);
    const LossOracle oracle = random_oracle(rng, d);
    const DataPoint z = random_point_for(oracle, rng);
    const Vec x = random_vec(rng, d, 3.0);
    const Vec g1 = oracle.subgradient(x, z);
    const Vec g2 = oracle.subgradient(x, z);
    if (g1 != g2) {
      f.record("subgradient not a pure function at case " + std::to_string(c));
    }
  }
  return finish("subgradient-determinism", cases, f);
}

SelfCheckResult check_recurrence_over_random_runs(std::uint64_t seed,
                                                  std::size_t runs) {
  RngStream rng(seed, 107);
  Failure f;
  for (std::size_t c = 0; c < runs; ++c) {
    const RandomCoupledCase instance = make_random_coupled_case(rng);
    const TrajectoryPair run =
        run_coupled(instance.spec, instance.oracle, instance.pair);
    const std::string err = check_deviation_recurrence(
        run, instance.spec.schedule, instance.oracle.lipschitz());
    if (!err.empty()) {
      f.record("run " + std::to_string(c) + ": " + err);
    }
  }
  return finish("coupled-run-recurrence", runs, f);
}

SelfCheckResult check_bound_monotonicity(std::uint64_t seed,
                                         std::size_t cases) {
  RngStream rng(seed, 108);
  Failure f;
  for (std::size_t c = 0; c < cases; ++c) {
    BoundInputs b;
    b.L = 0.5 + 2.0 * rng.uniform01();
    b.R = 0.5 + 4.0 * rng.uniform01();
    b.n = 1 + rng.uniform_index(50);
    b.T = 2 + rng.uniform_index(200);
    const double eta = 0.001 + 0.3 * rng.uniform01();
    b.schedule = StepSchedule::constant(eta);

    BoundInputs bigger_T = b;
    bigger_T.T = b.T + 1 + rng.uniform_index(50);
    BoundInputs bigger_eta = b;
    bigger_eta.schedule = StepSchedule::constant(eta * (1.0 + rng.uniform01()));

    const double cap = 2.0 * b.R;
    auto probe = [&](auto&& fn, const char* name) {
      const double v0 = fn(b);
      const double v1 = fn(bigger_T);
      const double v2 = fn(bigger_eta);
      if (v1 + 1e-12 < v0 || v2 + 1e-12 < v0 || v0 > cap || v1 > cap || v2 > cap) {
        f.record(std::string(name) + " not monotone/capped at case " +
                 std::to_string(c));
      }
    };
    probe([](const BoundInputs& in) { return bound_gd(in); }, "bound_gd");
    probe([](const BoundInputs& in) { return bound_rsgd_expectation(in); },
          "bound_rsgd_expectation");
    probe([](const BoundInputs& in) { return bound_rsgd_highprob(in).bound; },
          "bound_rsgd_highprob");
    probe([](const BoundInputs& in) { return bound_persgd(in); }, "bound_persgd");
  }
  return finish("bound-monotonicity", cases, f);
}

SelfCheckResult check_decomposition_identity(std::uint64_t seed,
                                             std::size_t trials) {
  Failure f;
  RiskExperimentSpec spec;
  spec.dist = SyntheticDistribution::absolute_deviation(0.7);
  spec.algorithm = Algorithm::gd;
  spec.n = 8;
  spec.T = 32;
  spec.d = 3;
  spec.schedule = StepSchedule::constant(0.05);
  spec.R = 1.5;
  spec.trials = trials;
  spec.seed = seed;
  spec.erm_steps = 2000;
  const RiskExperimentResult result = risk_experiment(spec);
  for (const std::string& v : result.violations) f.record(v);
  return finish("risk-decomposition-identity", trials, f);
}

}  // namespace

RandomCoupledCase make_random_coupled_case(RngStream& rng) {
  const std::size_t d = 1 + rng.uniform_index(6);
  LossOracle oracle = random_oracle(rng, d);
  const std::size_t n = 1 + rng.uniform_index(8);

  RunSpec spec;
  switch (rng.uniform_index(4)) {
    case 0:
      spec.algorithm = Algorithm::gd;
      break;
    case 1:
      spec.algorithm = Algorithm::rsgd;
      break;
    case 2:
      spec.algorithm = Algorithm::persgd;
      break;
    default:
      spec.algorithm = Algorithm::nsgd;
      break;
  }

  switch (spec.algorithm) {
    case Algorithm::persgd:
      spec.T = n * (1 + rng.uniform_index(4));
      break;
    case Algorithm::nsgd:
      spec.T = n * n;
      break;
    default:
      spec.T = 2 + rng.uniform_index(39);
      break;
  }

  const double eta = 0.001 + 0.5 * rng.uniform01();
  const bool explicit_list = spec.algorithm != Algorithm::nsgd && rng.uniform_index(2) == 0;
  if (explicit_list) {
    std::vector<double> etas(spec.T);
    for (double& e : etas) e = 0.001 + 0.5 * rng.uniform01();
    if (spec.algorithm == Algorithm::persgd) {
      std::sort(etas.begin(), etas.end(), std::greater<double>());
    }
    spec.schedule = StepSchedule::explicit_list(std::move(etas));
  } else {
    spec.schedule = StepSchedule::constant(eta);
  }

  spec.ball = make_origin_ball(d, 0.5 + 2.5 * rng.uniform01());
  spec.start = zeros(d);
  if (spec.algorithm == Algorithm::nsgd) {
    spec.sigma = 2.0 * rng.uniform01();
    spec.sigma_set = true;
  }
  if (spec.algorithm == Algorithm::persgd && rng.uniform_index(2) == 0) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    spec.permutation = std::move(perm);
  }
  spec.rng = RngStream(rng.next_u64(), 0);
  spec.iterate_cap = 0;

  NeighborPair pair = make_random_pair(oracle.family(), n, rng);
  return RandomCoupledCase{std::move(spec), std::move(oracle), std::move(pair)};
}

std::string check_deviation_recurrence(const TrajectoryPair& run,
                                       const StepSchedule& schedule, double L) {
  const std::size_t T = run.on_s.T;
  if (run.deltas.size() != T || run.a_ts.size() + 1 != T) {
    return "recorded delta/a_t lengths do not match T";
  }
  for (std::size_t t = 1; t < T; ++t) {
    const double eta = schedule.at(t);
    const double dlt = run.deltas[t - 1];
    const double nxt = run.deltas[t];
    const double a = run.a_ts[t - 1];
    const double rhs =
        dlt * dlt + 4.0 * L * L * eta * eta + 2.0 * eta * a * dlt + 1e-9;
    if (nxt * nxt > rhs) {
      std::ostringstream os;
      os << "step " << t << ": delta^2 " << nxt * nxt << " > " << rhs;
      return os.str();
    }
  }
  const double final_delta = run.deltas.back();
  if (run.t0 == 0) {
    if (final_delta != 0.0) {
      return "objectives never differed but delta_T != 0";
    }
    return "";
  }
  double weighted_a = 0.0;
  for (std::size_t t = run.t0 + 1; t < T; ++t) {
    weighted_a += schedule.at(t) * run.a_ts[t - 1];
  }
  const double closed_form =
      2.0 * L * std::sqrt(schedule.sum_sq(run.t0, T - 1)) + 2.0 * weighted_a + 1e-9;
  if (final_delta > closed_form) {
    std::ostringstream os;
    os << "delta_T " << final_delta << " > closed form " << closed_form;
    return os.str();
  }
  return "";
}

std::vector<SelfCheckResult> run_selfcheck(std::uint64_t seed,
                                           std::size_t cases) {
  if (cases == 0) cases = 1;
  std::vector<SelfCheckResult> results;
  results.push_back(check_projection_nonexpansive(seed, cases));
  results.push_back(check_projection_idempotent(seed, cases));
  results.push_back(check_rng_reproducibility(seed));
  results.push_back(check_lipschitz(seed, cases));
  results.push_back(check_subgradient_inequality(seed, cases));
  results.push_back(check_monotonicity(seed, cases));
  results.push_back(check_subgradient_determinism(seed, std::max<std::size_t>(cases / 10, 1)));
  results.push_back(check_recurrence_over_random_runs(
      seed, std::max<std::size_t>(cases / 50, 20)));
  results.push_back(check_bound_monotonicity(seed, std::max<std::size_t>(cases / 10, 1)));
  results.push_back(check_decomposition_identity(seed, std::max<std::size_t>(cases / 100, 5)));
  return results;
}

bool all_passed(const std::vector<SelfCheckResult>& results) {
  for (const SelfCheckResult& r : results) {
    if (!r.passed()) return false;
  }
  return true;
}

}  // namespace uaslab
