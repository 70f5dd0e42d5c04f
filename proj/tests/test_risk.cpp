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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "uaslab/risk.hpp"

using namespace uaslab;

namespace {

// Exact empirical minimizer of (1/n) sum |x_1 - z_i|: any median of the tags.
double sample_median(const Dataset& s) {
  std::vector<double> tags;
  tags.reserve(s.size());
  for (const DataPoint& z : s) tags.push_back(z.tag);
  std::sort(tags.begin(), tags.end());
  return tags[(tags.size() - 1) / 2];
}

}  // namespace

TEST_CASE("optimization error: zero at the reference and flat median plateaus") {
  const LossOracle oracle = LossOracle::absolute_deviation();
  const Dataset s{DataPoint{-1.0}, DataPoint{1.0}, DataPoint{-1.0}, DataPoint{1.0}};
  CHECK(optimization_error(oracle, s, Vec{0.3}, Vec{0.3}) == 0.0);
  // Every point of [-1, 1] attains the same empirical risk 1 here.
  CHECK(optimization_error(oracle, s, Vec{0.0}, Vec{0.5}) == 0.0);
}

TEST_CASE("long-horizon reference lands within 1e-4 of the exact median risk") {
  RngStream rng(19, 0);
  const LossOracle oracle = LossOracle::absolute_deviation();
  const Ball ball = make_origin_ball(1, 2.0);
  for (int c = 0; c < 5; ++c) {
    Dataset s(9);
    for (DataPoint& z : s) z.tag = 2.0 * rng.uniform01() - 1.0;
    const Vec ref = compute_erm_reference(oracle, s, ball, 100000);
    const double f_ref = empirical_risk(oracle, s, ref);
    const double f_star = empirical_risk(oracle, s, Vec{sample_median(s)});
    CHECK(f_ref - f_star >= -1e-9);
    CHECK(f_ref - f_star <= 1e-4);
  }
}

TEST_CASE("generalization gap vanishes for a point mass and matches the symmetric case") {
  const LossOracle oracle = LossOracle::absolute_deviation();

  // Point mass: the fresh sample equals the training points exactly.
  const SyntheticDistribution point_mass = SyntheticDistribution::absolute_deviation(1.0);
  const Dataset s(6, DataPoint{1.0});
  RngStream rng(4, 0);
  const GapEstimate gap = generalization_gap(oracle, point_mass, s, zeros(1), 6, rng, 2.0);
  CHECK(gap.gap == 0.0);
  CHECK(gap.se_envelope == doctest::Approx(2.0 * std::sqrt(2.0 / 6.0)));

  // Symmetric +-1 distribution at the origin: F_D(0) = 1 exactly.
  const SyntheticDistribution sym = SyntheticDistribution::absolute_deviation(0.5);
  CHECK(sym.population_risk(oracle, zeros(1)) == 1.0);
  Dataset skewed{DataPoint{1.0}, DataPoint{1.0}, DataPoint{-1.0}};
  const double exact_gap = 1.0 - empirical_risk(oracle, skewed, zeros(1));
  CHECK(exact_gap == doctest::Approx(0.0));  // |0-z| = 1 for both tags
}

TEST_CASE("closed-form approximation bound") {
  CHECK(approx_error_bound(1.0, 1.0, 100, std::exp(-2.0)) ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(approx_error_bound(1.0, 1.0, 100, 1.0) == 0.0);
  const double b_n = approx_error_bound(2.0, 3.0, 50, 0.05);
  const double b_4n = approx_error_bound(2.0, 3.0, 200, 0.05);
  CHECK(b_4n == doctest::Approx(b_n / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(approx_error_bound(1.0, 1.0, 100, 0.0), std::invalid_argument);
}

TEST_CASE("multi-pass generalization bound") {
  CHECK(multipass_gen_bound(1.0, 0.01, 4, 25) == doctest::Approx(0.56).epsilon(1e-12));
  CHECK(multipass_gen_bound(1.0, 0.0, 4, 25) == 0.0);
  CHECK(multipass_gen_bound(1.0, 0.3, 1, 1) == doctest::Approx(8.0 * 0.3).epsilon(1e-12));
}

TEST_CASE("noisy-oracle optimization bound and its theta window") {
  const double v = online_to_batch_bound(1.0, 1.0, 0.0, 3, 0.1, 100, 4.0 * std::exp(-2.0));
  CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
  // Large steps are dominated by the eta L^2 / 2 term.
  const double big = online_to_batch_bound(1.0, 1.0, 0.0, 3, 50.0, 100, 0.5);
  CHECK(big >= 50.0 / 2.0);
  CHECK_THROWS_AS(online_to_batch_bound(1.0, 1.0, 0.0, 3, 0.1, 100, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(online_to_batch_bound(1.0, 1.0, 0.0, 3, 0.1, 8, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("fixed-permutation optimization bound") {
  CHECK(persgd_opt_bound(1.0, 1.0, 1, 1, {1.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  // Constant epoch steps against the written-out form with x1_dist = 2R:
  // (2R)^2/(2 n K eta) + L^2 (n+2) eta / 2.
  const double R = 1.5;
  const double L = 1.0;
  const std::size_t n = 8;
  const std::size_t K = 4;
  const double eta = 0.05;
  const double expected =
      (2.0 * R) * (2.0 * R) / (2.0 * n * K * eta) + L * L * (n + 2.0) * eta / 2.0;
  CHECK(persgd_opt_bound(R, L, n, K, std::vector<double>(K, eta), 2.0 * R) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(persgd_opt_bound(1.0, 1.0, 2, 2, {0.0, 0.0}, 1.0),
                  std::invalid_argument);
}

TEST_CASE("known minimizers of the synthetic families") {
  const SyntheticDistribution ad = SyntheticDistribution::absolute_deviation(0.75);
  const LossOracle oracle = ad.make_oracle();
  const Vec xs = ad.known_minimizer(3, 2.0);
  CHECK(xs == Vec{1.0, 0.0, 0.0});
  CHECK(ad.known_optimum(2.0) == doctest::Approx(0.5));
  // No point on the ball does better than the claimed optimum.
  RngStream rng(23, 0);
  for (int c = 0; c < 300; ++c) {
    Vec x{4.0 * rng.uniform01() - 2.0};
    CHECK(ad.population_risk(oracle, x) >= ad.known_optimum(2.0) - 1e-12);
  }

  const SyntheticDistribution hm = SyntheticDistribution::hinge_mixture(0.3);
  const LossOracle hinge = hm.make_oracle();
  const Vec hs = hm.known_minimizer(2, 1.0);
  CHECK(hs == Vec{-1.0, 0.0});
  for (int c = 0; c < 300; ++c) {
    Vec x{2.0 * rng.uniform01() - 1.0, 0.0};
    CHECK(hm.population_risk(hinge, x) >= hm.known_optimum(1.0) - 1e-12);
  }
}

TEST_CASE("risk experiment: telescoping identity and point-mass convergence") {
  RiskExperimentSpec spec;
  spec.dist = SyntheticDistribution::absolute_deviation(1.0);  // point mass at +1
  spec.algorithm = Algorithm::gd;
  spec.n = 4;
  spec.T = 2000;
  spec.d = 2;
  spec.schedule = StepSchedule::constant(0.05);
  spec.R = 2.0;
  spec.trials = 3;
  spec.seed = 5;
  spec.erm_steps = 5000;

  const RiskExperimentResult result = risk_experiment(spec);
  CHECK(result.violations.empty());
  for (const RiskReport& rep : result.reports) {
    CHECK(std::abs(rep.decomposition_residual) <= 1e-12);
    CHECK(rep.eps_risk ==
          doctest::Approx(rep.eps_gen + rep.eps_opt + rep.eps_approx).epsilon(1e-12));
  }
  // GD run long enough on a point mass drives the excess risk near zero.
  CHECK(result.mean_excess >= 0.0);
  CHECK(result.mean_excess <= 0.05);
}

TEST_CASE("tuned gd keeps the mean excess under the reference envelope") {
  RiskExperimentSpec spec;
  spec.dist = SyntheticDistribution::absolute_deviation(0.75);
  spec.algorithm = Algorithm::gd;
  spec.n = 16;
  spec.T = 256;
  spec.d = 3;
  spec.R = 2.0;
  const double eta = spec.R / (4.0 * std::sqrt(256.0 * 16.0));
  spec.schedule = StepSchedule::constant(eta);
  spec.trials = 10;
  spec.seed = 2;
  spec.erm_steps = 20000;
  const RiskExperimentResult result = risk_experiment(spec);
  CHECK(result.violations.empty());
  CHECK(result.mean_excess <= 4.0 * spec.R / 4.0);  // 4 L R / sqrt(n)
}

TEST_CASE("a data-independent loss has zero generalization gap exactly") {
  // The drift loss ignores its tag, so with a matched fresh-sample size the
  // Monte-Carlo estimate reproduces the empirical mean bit for bit.
  const LossOracle oracle = LossOracle::linear_drift(2, 4.0);
  const SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.5);
  RngStream data_rng(31, 0);
  const Dataset s = dist.sample_dataset(7, data_rng);
  RngStream mc_rng(32, 0);
  const GapEstimate gap =
      generalization_gap(oracle, dist, s, Vec{0.3, -0.2, 0.1}, 7, mc_rng, 1.0);
  CHECK(gap.gap == 0.0);
}

TEST_CASE("measured rsgd optimization error respects the noisy-oracle bound") {
  // sigma = 0 instance of the online-to-batch guarantee: count per-trial
  // exceedances against theta * trials plus a binomial slack.
  const SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.75);
  const LossOracle oracle = dist.make_oracle();
  const std::size_t n = 10;
  const std::size_t T = 100;
  const double eta = 0.05;
  const double R = 1.0;
  const double theta = 0.2;  // inside (4 exp(-T/32), 1)
  const std::size_t trials = 50;
  const Ball ball = make_origin_ball(2, R);
  const double bound = online_to_batch_bound(1.0, R, 0.0, 2, eta, T, theta);

  std::size_t exceedances = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RngStream data_rng(41, trial * 8);
    const Dataset s = dist.sample_dataset(n, data_rng);
    RunSpec spec;
    spec.algorithm = Algorithm::rsgd;
    spec.T = T;
    spec.schedule = StepSchedule::constant(eta);
    spec.ball = ball;
    spec.start = zeros(2);
    spec.rng = RngStream(41, trial * 8 + 1);
    spec.iterate_cap = 0;
    const Trajectory traj = run_rsgd(spec, oracle, s);
    const Vec ref = compute_erm_reference(oracle, s, ball, 20000);
    if (optimization_error(oracle, s, traj.averaged_output, ref) > bound) {
      ++exceedances;
    }
  }
  const double tp = theta * static_cast<double>(trials);
  const double allowed = tp + 3.0 * std::sqrt(tp * (1.0 - theta));
  CHECK(static_cast<double>(exceedances) <= allowed);
}

TEST_CASE("multipass gap stays within the closed-form bound") {
  const SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.75);
  const MultipassResult result =
      multipass_experiment(dist, 4, 25, 0.01, 3, 1.0, 40, 9);
  CHECK(result.bound == doctest::Approx(0.56));
  CHECK(std::abs(result.mean_gap) <= result.bound + 3.0 * result.gap_se);
}
