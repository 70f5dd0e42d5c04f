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

#include "uaslab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uaslab/parallel.hpp"

namespace uaslab {

namespace {

void check_bound_inputs(const BoundInputs& b) {
  if (!(b.L > 0.0) || !std::isfinite(b.L)) {
    throw std::invalid_argument("BoundInputs: L must be > 0");
  }
  if (!(b.R > 0.0) || !std::isfinite(b.R)) {
    throw std::invalid_argument("BoundInputs: R must be > 0");
  }
  if (b.n < 1) throw std::invalid_argument("BoundInputs: n must be >= 1");
  if (b.T >= 1) b.schedule.require_length(b.T - 1);
}

double cap(const BoundInputs& b, double raw) { return std::min(2.0 * b.R, raw); }

std::map<std::string, double> quantile_map(std::vector<double> values) {
  std::map<std::string, double> q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  auto nearest_rank = [&values](double p) {
    const std::size_t m = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(m)));
    if (rank == 0) rank = 1;
    if (rank > m) rank = m;
    return values[rank - 1];
  };
  q["q50"] = nearest_rank(0.50);
  q["q90"] = nearest_rank(0.90);
  q["q99"] = nearest_rank(0.99);
  q["max"] = values.back();
  return q;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

}  // namespace

double bound_gd(const BoundInputs& b) {
  check_bound_inputs(b);
  if (b.T <= 1) return cap(b, 0.0);
  const double s1 = b.schedule.sum(1, b.T - 1);
  const double s2 = b.schedule.sum_sq(1, b.T - 1);
  return cap(b, 4.0 * b.L * (s1 / static_cast<double>(b.n) + std::sqrt(s2)));
}

double bound_rsgd_expectation(const BoundInputs& b) {
  check_bound_inputs(b);
  if (b.T <= 1) return cap(b, 0.0);
  const double s1 = b.schedule.sum(1, b.T - 1);
  const double s2 = b.schedule.sum_sq(1, b.T - 1);
  return cap(b, 4.0 * b.L * (std::sqrt(s2) + s1 / static_cast<double>(b.n)));
}

HighProbBound bound_rsgd_highprob(const BoundInputs& b) {
  check_bound_inputs(b);
  if (!b.schedule.is_constant()) {
    throw std::invalid_argument(
        "bound_rsgd_highprob: the high-probability form requires a constant step size");
  }
  HighProbBound out;
  out.failure_prob = std::exp(-static_cast<double>(b.n) / 2.0);
  if (b.T <= 1) {
    out.bound = cap(b, 0.0);
    return out;
  }
  const double eta = b.schedule.constant_eta();
  const double tm1 = static_cast<double>(b.T - 1);
  out.bound =
      cap(b, 4.0 * b.L * (eta * std::sqrt(tm1) + eta * tm1 / static_cast<double>(b.n)));
  return out;
}

double bound_persgd(const BoundInputs& b) {
  check_bound_inputs(b);
  if (b.T > 1 && !b.schedule.non_increasing(b.T - 1)) {
    throw std::invalid_argument(
        "bound_persgd: step sizes must form a non-increasing sequence");
  }
  if (b.T <= 1) return cap(b, 0.0);
  const double s1 = b.schedule.sum(1, b.T - 1);
  const double s2 = b.schedule.sum_sq(1, b.T - 1);
  return cap(b, 2.0 * b.L * (std::sqrt(s2) + 2.0 * s1 / static_cast<double>(b.n)));
}

double bound_rsgd_small_T(const BoundInputs& b) {
  check_bound_inputs(b);
  if (b.T > b.n) {
    throw std::invalid_argument("bound_rsgd_small_T: requires T <= n");
  }
  if (b.T <= 1) return cap(b, 0.0);
  const double s1 = b.schedule.sum(1, b.T - 1);
  const double s2 = b.schedule.sum_sq(1, b.T - 1);
  const double frac = static_cast<double>(b.T - 1) / static_cast<double>(b.n);
  return cap(b, 3.0 * b.L * frac * (std::sqrt(s2) + s1 / static_cast<double>(b.n)));
}

double bound_persgd_small_T(const BoundInputs& b) {
  check_bound_inputs(b);
  if (b.T > b.n) {
    throw std::invalid_argument("bound_persgd_small_T: requires T <= n");
  }
  if (b.T > 1 && !b.schedule.non_increasing(b.T - 1)) {
    throw std::invalid_argument(
        "bound_persgd_small_T: step sizes must form a non-increasing sequence");
  }
  if (b.T <= 1) return cap(b, 0.0);
  const double s2 = b.schedule.sum_sq(1, b.T - 1);
  const double frac = static_cast<double>(b.T - 1) / static_cast<double>(b.n);
  return cap(b, std::sqrt(2.0) * b.L * frac * std::sqrt(s2));
}

double generic_lower_floor(const BoundInputs& b) {
  if (!(b.L > 0.0) || !std::isfinite(b.L)) {
    throw std::invalid_argument("generic_lower_floor: L must be > 0");
  }
  if (b.n < 1) throw std::invalid_argument("generic_lower_floor: n must be >= 1");
  if (!b.schedule.is_constant()) {
    throw std::invalid_argument("generic_lower_floor: requires a constant step size");
  }
  return b.L * static_cast<double>(b.T) * b.schedule.constant_eta() /
         static_cast<double>(b.n);
}

UasEstimate estimate_uas(const RunSpec& spec, const LossOracle& oracle,
                         const NeighborPair& pair, std::size_t trials,
                         std::size_t jobs,
                         std::vector<TrajectoryPair>* keep_pairs) {
  if (trials == 0) throw std::invalid_argument("estimate_uas: trials must be >= 1");
  validate_run_spec(spec, oracle, pair.base().size());

  BoundInputs b;
  b.L = oracle.lipschitz();
  b.R = spec.ball.radius;
  b.n = pair.base().size();
  b.T = spec.T;
  b.schedule = spec.schedule;

  UasEstimate est;
  switch (spec.algorithm) {
    case Algorithm::gd:
      est.reference_bound = bound_gd(b);
      est.reference_bound_kind = "gd";
      break;
    case Algorithm::persgd:
      est.reference_bound = bound_persgd(b);
      est.reference_bound_kind = "persgd";
      break;
    case Algorithm::rsgd:
    case Algorithm::nsgd:
      if (spec.schedule.is_constant()) {
        est.reference_bound = bound_rsgd_highprob(b).bound;
        est.reference_bound_kind = "rsgd-highprob";
      } else {
        est.reference_bound = bound_rsgd_expectation(b);
        est.reference_bound_kind = "rsgd-expectation";
      }
      break;
  }

  est.per_trial_final_deltas.resize(trials);
  est.per_trial_output_deltas.resize(trials);
  est.per_trial_max_deltas.resize(trials);
  if (keep_pairs) keep_pairs->resize(trials);

  parallel_for(trials, jobs, [&](std::size_t trial) {
    RunSpec trial_spec = spec;
    trial_spec.rng = RngStream(spec.rng.seed(), spec.rng.stream_id() + trial);
    TrajectoryPair run = run_coupled(trial_spec, oracle, pair);
    est.per_trial_final_deltas[trial] = run.deltas.back();
    est.per_trial_output_deltas[trial] = run.output_delta;
    est.per_trial_max_deltas[trial] = run.max_delta;
    if (keep_pairs) (*keep_pairs)[trial] = std::move(run);
  });

  est.mean_final_delta = mean_of(est.per_trial_final_deltas);
  est.mean_output_delta = mean_of(est.per_trial_output_deltas);
  est.final_quantiles = quantile_map(est.per_trial_final_deltas);
  est.output_quantiles = quantile_map(est.per_trial_output_deltas);
  for (std::size_t i = 0; i < trials; ++i) {
    const double worst =
        std::max(est.per_trial_max_deltas[i], est.per_trial_output_deltas[i]);
    if (worst > est.reference_bound) ++est.violations_of_bound;
  }
  return est;
}

const char* to_string(LowerBoundVariant which) {
  switch (which) {
    case LowerBoundVariant::gd_fullbatch:
      return "gd";
    case LowerBoundVariant::rsgd:
      return "rsgd";
    case LowerBoundVariant::persgd:
      return "persgd";
  }
  return "unknown";
}

AdversarialInstance make_adversarial_instance(double eta, std::size_t T,
                                              std::size_t n, std::size_t d) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("adversarial instance: eta must be > 0");
  }
  if (T < 2) throw std::invalid_argument("adversarial instance: T must be >= 2");
  if (n < 1) throw std::invalid_argument("adversarial instance: n must be >= 1");
  const double inv_eta_sq = std::floor(1.0 / (eta * eta));
  std::size_t D = static_cast<std::size_t>(
      std::min(static_cast<double>(T), inv_eta_sq));
  if (D == 0) {
    throw std::invalid_argument("adversarial instance: eta too large, floor(1/eta^2) = 0");
  }
  const std::size_t d_eff = d == 0 ? D : d;
  if (d_eff < D) {
    throw std::invalid_argument(
        "adversarial instance: the construction requires d >= min{T, 1/eta^2}");
  }
  const double sqrt_D = std::sqrt(static_cast<double>(D));
  const double kappa =
      std::max(sqrt_D, 100.0 * static_cast<double>(T) * sqrt_D);
  const double nu = eta / (2.0 * static_cast<double>(n) * kappa);
  return AdversarialInstance{LossOracle::adversarial_max(D, nu, kappa),
                             make_lower_bound_pair(n),
                             make_origin_ball(d_eff, 1.0), D, kappa, nu};
}

LowerBoundReport lower_bound_experiment(LowerBoundVariant which, double eta,
                                        std::size_t T, std::size_t n,
                                        std::size_t trials, std::size_t d,
                                        std::uint64_t seed, std::size_t jobs) {
  if (trials == 0) {
    throw std::invalid_argument("lower_bound_experiment: trials must be >= 1");
  }
  AdversarialInstance inst = make_adversarial_instance(eta, T, n, d);

  if (which == LowerBoundVariant::gd_fullbatch) trials = 1;
  if (which == LowerBoundVariant::persgd && T % n != 0) {
    throw std::invalid_argument(
        "lower_bound_experiment: persgd requires T = n*K epochs");
  }

  LowerBoundReport report;
  report.which = which;
  report.eta = eta;
  report.T = T;
  report.n = n;
  report.d = inst.ball.dim();
  report.D = inst.D;
  report.kappa = inst.kappa;
  report.nu = inst.nu;
  report.trials = trials;
  report.probe_step = std::min(inst.D + 2, T);
  const double td = static_cast<double>(T);
  const double nd = static_cast<double>(n);
  report.reference_expression =
      std::min(1.0, td / nd) * eta * std::sqrt(td) + eta * td / nd;
  report.per_trial_final_deltas.resize(trials);

  std::vector<double> output_deltas(trials, 0.0);
  std::vector<double> probe_deltas(trials, 0.0);
  std::vector<std::vector<double>> curves(trials);

  parallel_for(trials, jobs, [&](std::size_t trial) {
    RngStream trial_rng(seed, trial);
    RunSpec spec;
    spec.T = T;
    spec.schedule = StepSchedule::constant(eta);
    spec.ball = inst.ball;
    spec.start = zeros(inst.ball.dim());
    spec.iterate_cap = 0;
    switch (which) {
      case LowerBoundVariant::gd_fullbatch:
        spec.algorithm = Algorithm::gd;
        break;
      case LowerBoundVariant::rsgd:
        spec.algorithm = Algorithm::rsgd;
        break;
      case LowerBoundVariant::persgd: {
        spec.algorithm = Algorithm::persgd;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        trial_rng.shuffle(perm);
        spec.permutation = std::move(perm);
        break;
      }
    }
    spec.rng = trial_rng;
    TrajectoryPair run = run_coupled(spec, inst.oracle, inst.pair);
    report.per_trial_final_deltas[trial] = run.deltas.back();
    output_deltas[trial] = run.output_delta;
    probe_deltas[trial] = run.deltas[report.probe_step - 1];
    if (trial == 0) curves[0] = std::move(run.deltas);
  });

  report.mean_final_delta = mean_of(report.per_trial_final_deltas);
  report.mean_output_delta = mean_of(output_deltas);
  report.probe_delta_first_trial = probe_deltas[0];
  report.first_trial_delta_curve = std::move(curves[0]);
  return report;
}

}  // namespace uaslab
