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

#include "uaslab/risk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uaslab/errors.hpp"
#include "uaslab/parallel.hpp"

namespace uaslab {

SyntheticDistribution::SyntheticDistribution(LossFamily family, double p_plus)
    : family_(family), p_plus_(p_plus) {
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
    throw std::invalid_argument("SyntheticDistribution: p_plus must lie in [0, 1]");
  }
}

SyntheticDistribution SyntheticDistribution::absolute_deviation(double p_plus) {
  return SyntheticDistribution(LossFamily::absolute_deviation, p_plus);
}

SyntheticDistribution SyntheticDistribution::hinge_mixture(double p_plus) {
  return SyntheticDistribution(LossFamily::hinge, p_plus);
}

LossOracle SyntheticDistribution::make_oracle() const {
  switch (family_) {
    case LossFamily::absolute_deviation:
      return LossOracle::absolute_deviation();
    case LossFamily::hinge:
      return LossOracle::hinge();
    default:
      throw std::logic_error("SyntheticDistribution: unsupported family");
  }
}

DataPoint SyntheticDistribution::sample(RngStream& rng) const {
  return DataPoint{rng.uniform01() < p_plus_ ? 1.0 : -1.0};
}

Dataset SyntheticDistribution::sample_dataset(std::size_t n,
                                              RngStream& rng) const {
  if (n == 0) {
    throw std::invalid_argument("sample_dataset: n must be >= 1");
  }
  Dataset s(n);
  for (DataPoint& z : s) z = sample(rng);
  return s;
}

double SyntheticDistribution::population_risk(const LossOracle& oracle,
                                              const Vec& x) const {
  return p_plus_ * oracle.value(x, DataPoint{1.0}) +
         (1.0 - p_plus_) * oracle.value(x, DataPoint{-1.0});
}

double SyntheticDistribution::population_risk_mc(const LossOracle& oracle,
                                                 const Vec& x, std::size_t m,
                                                 RngStream& rng) const {
  if (m == 0) {
    throw std::invalid_argument("population_risk_mc: m must be >= 1");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) sum += oracle.value(x, sample(rng));
  return sum / static_cast<double>(m);
}

Vec SyntheticDistribution::known_minimizer(std::size_t d, double R) const {
  if (d == 0) throw std::invalid_argument("known_minimizer: d must be >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("known_minimizer: R must be > 0");
  Vec x = zeros(d);
  // Both families are minimized at the +/-1 target on the majority side,
  // clipped to the ball.
  if (p_plus_ > 0.5) {
    x[0] = std::min(1.0, R);
  } else if (p_plus_ < 0.5) {
    x[0] = -std::min(1.0, R);
  }
  return x;
}

double SyntheticDistribution::known_optimum(double R) const {
  const LossOracle oracle = make_oracle();
  return population_risk(oracle, known_minimizer(1, R));
}

double optimization_error(const LossOracle& oracle, const Dataset& s,
                          const Vec& output, const Vec& erm_reference) {
  return empirical_risk(oracle, s, output) -
         empirical_risk(oracle, s, erm_reference);
}

GapEstimate generalization_gap(const LossOracle& oracle,
                               const SyntheticDistribution& dist,
                               const Dataset& s, const Vec& output,
                               std::size_t m, RngStream& rng, double R) {
  if (m == 0) {
    throw std::invalid_argument("generalization_gap: fresh sample size m must be >= 1");
  }
  if (!(R > 0.0)) {
    throw std::invalid_argument("generalization_gap: R must be > 0");
  }
  GapEstimate est;
  est.gap = dist.population_risk_mc(oracle, output, m, rng) -
            empirical_risk(oracle, s, output);
  // The loss range on the ball is within [-RL, RL]; Hoeffding-style
  // standard-error envelope for the fresh-sample mean.
  est.se_envelope =
      oracle.lipschitz() * R * std::sqrt(2.0 / static_cast<double>(m));
  return est;
}

double approx_error_bound(double R, double L, std::size_t n, double theta) {
  if (!(R > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("approx_error_bound: R and L must be > 0");
  }
  if (n < 1) throw std::invalid_argument("approx_error_bound: n must be >= 1");
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("approx_error_bound: theta must lie in (0, 1]");
  }
  return R * L * std::sqrt(2.0 * std::log(1.0 / theta)) /
         std::sqrt(static_cast<double>(n));
}

double multipass_gen_bound(double L, double eta, std::size_t K, std::size_t n) {
  if (!(L > 0.0)) throw std::invalid_argument("multipass_gen_bound: L must be > 0");
  if (eta < 0.0 || !std::isfinite(eta)) {
    throw std::invalid_argument("multipass_gen_bound: eta must be finite and >= 0");
  }
  if (K < 1 || n < 1) {
    throw std::invalid_argument("multipass_gen_bound: K and n must be >= 1");
  }
  const double kn = static_cast<double>(K) * static_cast<double>(n);
  return 4.0 * L * L * eta * (std::sqrt(kn) + static_cast<double>(K));
}

double online_to_batch_bound(double L, double R, double sigma, std::size_t d,
                             double eta, std::size_t T, double theta) {
  if (!(L > 0.0) || !(R > 0.0)) {
    throw std::invalid_argument("online_to_batch_bound: L and R must be > 0");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("online_to_batch_bound: sigma must be >= 0");
  }
  if (!(eta > 0.0)) {
    throw std::invalid_argument("online_to_batch_bound: eta must be > 0");
  }
  if (T < 1) throw std::invalid_argument("online_to_batch_bound: T must be >= 1");
  const double td = static_cast<double>(T);
  const double lo = 4.0 * std::exp(-td / 32.0);
  if (!(theta > lo && theta < 1.0)) {
    throw std::invalid_argument(
        "online_to_batch_bound: theta must lie in (4 exp(-T/32), 1)");
  }
  return (L * R + sigma * (R + eta * L)) * std::sqrt(2.0 * std::log(4.0 / theta) / td) +
         R * R / (2.0 * eta * td) +
         eta * (L * L / 2.0 + static_cast<double>(d) * sigma * sigma);
}

double persgd_opt_bound(double R, double L, std::size_t n, std::size_t K,
                        const std::vector<double>& eta_per_epoch,
                        double x1_dist) {
  if (!(R > 0.0) || !(L > 0.0)) {
    throw std::invalid_argument("persgd_opt_bound: R and L must be > 0");
  }
  if (n < 1 || K < 1) {
    throw std::invalid_argument("persgd_opt_bound: n and K must be >= 1");
  }
  if (eta_per_epoch.size() != K) {
    throw std::invalid_argument("persgd_opt_bound: one step size per epoch required");
  }
  if (x1_dist < 0.0) {
    throw std::invalid_argument("persgd_opt_bound: x1_dist must be >= 0");
  }
  double s1 = 0.0;
  double s2 = 0.0;
  for (double e : eta_per_epoch) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("persgd_opt_bound: epoch steps must be finite and >= 0");
    }
    s1 += e;
    s2 += e * e;
  }
  if (!(s1 > 0.0)) {
    throw std::invalid_argument("persgd_opt_bound: the step sum must be positive");
  }
  return x1_dist * x1_dist / (2.0 * static_cast<double>(n) * s1) +
         (L * L * (static_cast<double>(n) + 2.0) / 2.0) * s2 / s1;
}

Vec compute_erm_reference(const LossOracle& oracle, const Dataset& s,
                          const Ball& ball, std::size_t steps) {
  if (steps < 8) {
    throw std::invalid_argument("compute_erm_reference: steps must be >= 8");
  }
  validate(ball);
  // Four equal phases with geometrically shrinking steps around the base
  // rate R/(100 L sqrt(steps)): the coarse phase covers any start-to-optimum
  // distance, the fine phases shrink the terminal oscillation. The reference
  // is the plain average of the final phase.
  const double eta_base = ball.radius /
                          (oracle.lipschitz() * 100.0 * std::sqrt(static_cast<double>(steps)));
  const std::size_t phase_len = steps / 4;
  const std::size_t d = ball.dim();
  Vec x = ball.center;
  Vec g(d, 0.0);
  Vec acc(d, 0.0);
  std::size_t tail_count = 0;
  for (std::size_t phase = 0; phase < 4; ++phase) {
    const double eta = eta_base * std::pow(10.0, 2.0 - static_cast<double>(phase));
    const std::size_t len = phase == 3 ? steps - 3 * phase_len : phase_len;
    for (std::size_t t = 0; t < len; ++t) {
      empirical_risk_subgradient_inplace(oracle, s, x, g);
      axpy(-eta, g, x);
      project_inplace(ball, x);
      if (phase == 3) {
        axpy(1.0, x, acc);
        ++tail_count;
      }
    }
  }
  scale(acc, 1.0 / static_cast<double>(tail_count));
  return acc;
}

namespace {

double sample_std(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double s = 0.0;
  for (double v : values) s += (v - mean) * (v - mean);
  return std::sqrt(s / static_cast<double>(values.size() - 1));
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

// Stream slots per trial, so dataset draws, the algorithm and the
// Monte-Carlo cross-check never share a stream.
constexpr std::uint64_t kStreamsPerTrial = 8;
constexpr std::uint64_t kDataSlot = 0;
constexpr std::uint64_t kAlgoSlot = 1;
constexpr std::uint64_t kMcSlot = 2;

}  // namespace

RiskExperimentResult risk_experiment(const RiskExperimentSpec& spec) {
  if (spec.trials == 0) {
    throw std::invalid_argument("risk_experiment: trials must be >= 1");
  }
  if (!spec.dist.has_known_minimizer()) {
    throw std::invalid_argument(
        "risk_experiment: excess-risk reporting needs a known population minimizer");
  }
  if (spec.d == 0) throw std::invalid_argument("risk_experiment: d must be >= 1");

  const LossOracle oracle = spec.dist.make_oracle();
  const Ball ball = make_origin_ball(spec.d, spec.R);
  const Vec x_star = spec.dist.known_minimizer(spec.d, spec.R);
  const double pop_opt = spec.dist.population_risk(oracle, x_star);
  const std::size_t fresh_m = spec.fresh_m == 0 ? 10 * spec.n : spec.fresh_m;

  RiskExperimentResult result;
  result.reports.resize(spec.trials);
  std::vector<std::string> violations(spec.trials);

  parallel_for(spec.trials, spec.jobs, [&](std::size_t trial) {
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * kStreamsPerTrial;
    RngStream data_rng(spec.seed, base + kDataSlot);
    const Dataset s = spec.dist.sample_dataset(spec.n, data_rng);

    RunSpec run;
    run.algorithm = spec.algorithm;
    run.T = spec.T;
    run.schedule = spec.schedule;
    run.ball = ball;
    run.start = zeros(spec.d);
    run.iterate_cap = 0;
    run.rng = RngStream(spec.seed, base + kAlgoSlot);
    const Trajectory traj = run_algorithm(run, oracle, s);
    const Vec& out = traj.averaged_output;

    const Vec ref = compute_erm_reference(oracle, s, ball, spec.erm_steps);

    const double f_s_out = empirical_risk(oracle, s, out);
    const double f_s_ref = empirical_risk(oracle, s, ref);
    const double f_d_out = spec.dist.population_risk(oracle, out);

    RiskReport& rep = result.reports[trial];
    rep.eps_gen = f_d_out - f_s_out;
    rep.eps_opt = f_s_out - f_s_ref;
    rep.eps_approx = f_s_ref - pop_opt;
    rep.eps_risk = f_d_out - pop_opt;
    rep.decomposition_residual =
        rep.eps_risk - (rep.eps_gen + rep.eps_opt + rep.eps_approx);
    rep.fresh_sample_size = fresh_m;
    rep.erm_value = f_s_ref;

    RngStream mc_rng(spec.seed, base + kMcSlot);
    const GapEstimate mc =
        generalization_gap(oracle, spec.dist, s, out, fresh_m, mc_rng, spec.R);
    rep.gap_mc = mc.gap;
    rep.gap_mc_se_envelope = mc.se_envelope;

    if (std::abs(rep.decomposition_residual) > 1e-12) {
      violations[trial] = "trial " + std::to_string(trial) +
                          ": risk decomposition residual above 1e-12";
    } else if (rep.eps_opt < -1e-3) {
      violations[trial] = "trial " + std::to_string(trial) +
                          ": optimization error below -1e-3 (bad ERM reference)";
    }
  });

  std::vector<double> excess(spec.trials);
  std::vector<double> gaps(spec.trials);
  for (std::size_t i = 0; i < spec.trials; ++i) {
    excess[i] = result.reports[i].eps_risk;
    gaps[i] = result.reports[i].eps_gen;
    if (!violations[i].empty()) result.violations.push_back(violations[i]);
  }
  result.mean_excess = mean_of(excess);
  result.mean_gap = mean_of(gaps);
  return result;
}

MultipassResult multipass_experiment(const SyntheticDistribution& dist,
                                     std::size_t K, std::size_t n, double eta,
                                     std::size_t d, double R,
                                     std::size_t trials, std::uint64_t seed,
                                     std::size_t jobs) {
  if (K == 0 || n == 0 || trials == 0 || d == 0) {
    throw std::invalid_argument("multipass_experiment: K, n, d and trials must be >= 1");
  }
  const LossOracle oracle = dist.make_oracle();
  const Ball ball = make_origin_ball(d, R);

  MultipassResult result;
  result.K = K;
  result.n = n;
  result.eta = eta;
  result.bound = multipass_gen_bound(oracle.lipschitz(), eta, K, n);
  result.gaps.resize(trials);

  parallel_for(trials, jobs, [&](std::size_t trial) {
    const std::uint64_t base = static_cast<std::uint64_t>(trial) * kStreamsPerTrial;
    RngStream data_rng(seed, base + kDataSlot);
    const Dataset s = dist.sample_dataset(n, data_rng);

    RunSpec run;
    run.algorithm = Algorithm::rsgd;
    run.T = K * n;
    run.schedule = StepSchedule::constant(eta);
    run.ball = ball;
    run.start = zeros(d);
    run.iterate_cap = 0;
    run.rng = RngStream(seed, base + kAlgoSlot);
    const Trajectory traj = run_rsgd(run, oracle, s);
    const Vec& out = traj.averaged_output;
    result.gaps[trial] =
        dist.population_risk(oracle, out) - empirical_risk(oracle, s, out);
  });

  result.mean_gap = mean_of(result.gaps);
  result.gap_std = sample_std(result.gaps, result.mean_gap);
  result.gap_se = result.gap_std / std::sqrt(static_cast<double>(trials));
  return result;
}

}  // namespace uaslab
