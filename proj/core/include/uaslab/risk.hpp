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

#ifndef UASLAB_RISK_HPP_
#define UASLAB_RISK_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "uaslab/losses.hpp"
#include "uaslab/optimizers.hpp"

namespace uaslab {

// Two-point synthetic data distribution over tags {+1, -1}: z = +1 with
// probability p_plus. The finite support makes the population risk exactly
// computable, which the excess-risk experiments use; a Monte-Carlo estimator
// is kept for fresh-sample generalization gaps.
class SyntheticDistribution {
 public:
  static SyntheticDistribution absolute_deviation(double p_plus);
  static SyntheticDistribution hinge_mixture(double p_plus);

  LossFamily loss_family() const { return family_; }
  double p_plus() const { return p_plus_; }
  LossOracle make_oracle() const;

  DataPoint sample(RngStream& rng) const;
  Dataset sample_dataset(std::size_t n, RngStream& rng) const;

  // Exact F_D(x) = p f(x,+1) + (1-p) f(x,-1).
  double population_risk(const LossOracle& oracle, const Vec& x) const;

  // Monte-Carlo estimate over m fresh samples.
  double population_risk_mc(const LossOracle& oracle, const Vec& x,
                            std::size_t m, RngStream& rng) const;

  bool has_known_minimizer() const { return true; }

  // Analytic population minimizer embedded in R^d on the radius-R ball, and
  // its risk (both families: x_1 = sign(p - 1/2) * min(1, R)).
  Vec known_minimizer(std::size_t d, double R) const;
  double known_optimum(double R) const;

 private:
  SyntheticDistribution(LossFamily family, double p_plus);

  LossFamily family_;
  double p_plus_;
};

// F_S(output) - F_S(erm_reference), unclamped so the risk decomposition
// telescopes exactly; slightly negative values flag an inexact reference.
double optimization_error(const LossOracle& oracle, const Dataset& s,
                          const Vec& output, const Vec& erm_reference);

struct GapEstimate {
  double gap = 0.0;          // estimated F_D(output) - F_S(output)
  double se_envelope = 0.0;  // L R sqrt(2/m)
};

// Fresh-sample estimate of the generalization gap at `output`. R is the
// feasible radius bounding the loss range for the error envelope.
GapEstimate generalization_gap(const LossOracle& oracle,
                               const SyntheticDistribution& dist,
                               const Dataset& s, const Vec& output,
                               std::size_t m, RngStream& rng, double R);

// R L sqrt(2 log(1/theta)) / sqrt(n), theta in (0, 1].
double approx_error_bound(double R, double L, std::size_t n, double theta);

// 4 L^2 eta (sqrt(K n) + K): expected multi-pass generalization bound.
double multipass_gen_bound(double L, double eta, std::size_t K, std::size_t n);

// (L R + sigma (R + eta L)) sqrt(2 log(4/theta) / T) + R^2/(2 eta T)
// + eta (L^2/2 + d sigma^2), theta in (4 exp(-T/32), 1).
double online_to_batch_bound(double L, double R, double sigma, std::size_t d,
                             double eta, std::size_t T, double theta);

// ||x^1 - x*(S)||^2 / (2 n sum_k eta_k)
// + (L^2 (n+2)/2) (sum_k eta_k^2) / (sum_k eta_k), for per-epoch constant
// steps under an arbitrary permutation.
double persgd_opt_bound(double R, double L, std::size_t n, std::size_t K,
                        const std::vector<double>& eta_per_epoch,
                        double x1_dist);

// High-accuracy empirical minimizer: long-horizon small-step GD
// (eta = R/(100 L sqrt(steps))), averaging the last half of the trajectory.
Vec compute_erm_reference(const LossOracle& oracle, const Dataset& s,
                          const Ball& ball, std::size_t steps = 100000);

struct RiskReport {
  double eps_gen = 0.0;
  double eps_opt = 0.0;
  double eps_approx = 0.0;
  double eps_risk = 0.0;  // equals excess population risk vs the known optimum
  double decomposition_residual = 0.0;
  std::size_t fresh_sample_size = 0;
  double gap_mc = 0.0;  // Monte-Carlo cross-check of eps_gen
  double gap_mc_se_envelope = 0.0;
  double erm_value = 0.0;  // F_S at the reference minimizer
};

struct RiskExperimentSpec {
  SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.75);
  Algorithm algorithm = Algorithm::gd;
  std::size_t n = 16;
  std::size_t T = 256;
  std::size_t d = 5;
  StepSchedule schedule = StepSchedule::constant(0.1);
  double R = 1.0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t erm_steps = 100000;
  std::size_t fresh_m = 0;  // 0 picks the default 10 n
  std::size_t jobs = 1;
};

struct RiskExperimentResult {
  std::vector<RiskReport> reports;
  double mean_excess = 0.0;
  double mean_gap = 0.0;
  std::vector<std::string> violations;  // identity / reference breaches
};

// Per trial: draw S ~ D^n, run the algorithm, compute the decomposition from
// one shared set of risk evaluations and verify the telescoping identity to
// 1e-12.
RiskExperimentResult risk_experiment(const RiskExperimentSpec& spec);

struct MultipassResult {
  std::size_t K = 0;
  std::size_t n = 0;
  double eta = 0.0;
  std::vector<double> gaps;  // per-trial F_D(out) - F_S(out)
  double mean_gap = 0.0;
  double gap_std = 0.0;
  double gap_se = 0.0;   // gap_std / sqrt(trials)
  double bound = 0.0;    // multipass_gen_bound
};

// K-pass with-replacement SGD generalization measurement (T = K n).
MultipassResult multipass_experiment(const SyntheticDistribution& dist,
                                     std::size_t K, std::size_t n, double eta,
                                     std::size_t d, double R,
                                     std::size_t trials, std::uint64_t seed,
                                     std::size_t jobs = 1);

}  // namespace uaslab

#endif  // UASLAB_RISK_HPP_
