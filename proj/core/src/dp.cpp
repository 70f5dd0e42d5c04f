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

#include "uaslab/dp.hpp"

#include <cmath>
#include <stdexcept>

#include "uaslab/parallel.hpp"

namespace uaslab {

void validate(const PrivacyParams& p) {
  if (!(p.alpha > 0.0) || !(p.alpha <= 1.0) || !std::isfinite(p.alpha)) {
    throw std::invalid_argument("PrivacyParams: alpha must lie in (0, 1]");
  }
  if (!(p.beta > 0.0) || !(p.beta < 1.0)) {
    throw std::invalid_argument("PrivacyParams: beta must lie in (0, 1)");
  }
}

void validate_for_sample(const PrivacyParams& p, std::size_t n) {
  validate(p);
  if (n < 1) throw std::invalid_argument("PrivacyParams: n must be >= 1");
  if (!(p.beta < 1.0 / static_cast<double>(n))) {
    throw std::invalid_argument("PrivacyParams: beta must be below 1/n");
  }
}

double default_beta(std::size_t n) {
  if (n < 1) throw std::invalid_argument("default_beta: n must be >= 1");
  const double nd = static_cast<double>(n);
  return 1.0 / (nd * nd);
}

double calibrate_sigma(double L, const PrivacyParams& p) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("calibrate_sigma: L must be > 0");
  }
  validate(p);
  return std::sqrt(8.0 * L * L * std::log(1.0 / p.beta)) / p.alpha;
}

double tuned_eta(double R, double L, std::size_t n, std::size_t d,
                 const PrivacyParams& p) {
  if (!(R > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("tuned_eta: R and L must be > 0");
  }
  if (n < 1 || d < 1) {
    throw std::invalid_argument("tuned_eta: n and d must be >= 1");
  }
  validate(p);
  const double nd = static_cast<double>(n);
  const double dim_term =
      std::sqrt(static_cast<double>(d) * std::log(1.0 / p.beta)) / p.alpha;
  return R / (L * nd * std::max(std::sqrt(nd), dim_term));
}

double dp_risk_envelope(double R, double L, std::size_t n, std::size_t d,
                        const PrivacyParams& p) {
  if (!(R > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("dp_risk_envelope: R and L must be > 0");
  }
  if (n < 1 || d < 1) {
    throw std::invalid_argument("dp_risk_envelope: n and d must be >= 1");
  }
  validate(p);
  const double nd = static_cast<double>(n);
  const double dim_term =
      std::sqrt(static_cast<double>(d) * std::log(1.0 / p.beta)) / (p.alpha * nd);
  return R * L * std::max(1.0 / std::sqrt(nd), dim_term);
}

DpRiskReport run_private_sco(const DpExperimentSpec& spec) {
  if (spec.trials == 0) {
    throw std::invalid_argument("run_private_sco: trials must be >= 1");
  }
  if (spec.d == 0) throw std::invalid_argument("run_private_sco: d must be >= 1");
  validate_for_sample(spec.privacy, spec.n);

  const LossOracle oracle = spec.dist.make_oracle();
  const double L = oracle.lipschitz();
  const Ball ball = make_origin_ball(spec.d, spec.R);
  const Vec x_star = spec.dist.known_minimizer(spec.d, spec.R);
  const double pop_opt = spec.dist.population_risk(oracle, x_star);

  DpRiskReport report;
  report.sigma = spec.sigma_override.value_or(calibrate_sigma(L, spec.privacy));
  report.eta = spec.eta_override.value_or(
      tuned_eta(spec.R, L, spec.n, spec.d, spec.privacy));
  report.envelope = dp_risk_envelope(spec.R, L, spec.n, spec.d, spec.privacy);
  report.T = spec.n * spec.n;
  report.per_trial_excess.resize(spec.trials);

  constexpr std::uint64_t kStreamsPerTrial = 8;
  parallel_for(spec.trials, spec.jobs, [&](std::size_t trial) {
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * kStreamsPerTrial;
    RngStream data_rng(spec.seed, base);
    const Dataset s = spec.dist.sample_dataset(spec.n, data_rng);

    RunSpec run;
    run.algorithm = Algorithm::nsgd;
    run.T = report.T;
    run.schedule = StepSchedule::constant(report.eta);
    run.ball = ball;
    run.start = zeros(spec.d);
    run.sigma = report.sigma;
    run.sigma_set = true;
    run.iterate_cap = 0;
    run.rng = RngStream(spec.seed, base + 1);
    const Trajectory traj = run_nsgd(run, oracle, s);
    report.per_trial_excess[trial] =
        spec.dist.population_risk(oracle, traj.averaged_output) - pop_opt;
  });

  double sum = 0.0;
  for (double v : report.per_trial_excess) sum += v;
  report.mean_excess_risk = sum / static_cast<double>(spec.trials);
  return report;
}

}  // namespace uaslab
