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
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expected values come from independent oracles computed
// here (closed-form trajectories, binomial slack, regressions), never from
// the library path under test.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "uaslab/dp.hpp"
#include "uaslab/parallel.hpp"
#include "uaslab/risk.hpp"
#include "uaslab/selfcheck.hpp"
#include "uaslab/stability.hpp"

using namespace uaslab;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::size_t worker_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return std::min<std::size_t>(hc == 0 ? 1 : hc, 8);
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(xs[i]) - mx;
    num += dx * (std::log(ys[i]) - my);
    den += dx * dx;
  }
  return num / den;
}

std::size_t binomial_allowance(std::size_t trials, double p) {
  const double tp = static_cast<double>(trials) * p;
  return static_cast<std::size_t>(std::floor(std::ceil(tp) + 3.0 * std::sqrt(tp)));
}

NeighborPair differing_hinge_pair(std::size_t n, RngStream& rng) {
  Dataset base(n);
  for (DataPoint& z : base) z.tag = rng.uniform_index(2) == 0 ? -1.0 : 1.0;
  const std::size_t idx = rng.uniform_index(n);
  return NeighborPair(base, idx + 1, DataPoint{-base[idx].tag});
}

// ---------------------------------------------------------------------------
// criterion 1: per-step deviation recurrence and its closed-form consequence
// over >= 100 mixed coupled runs.
void criterion1() {
  RngStream rng(1001, 0);
  std::size_t runs = 0;
  std::string first_error;
  for (int c = 0; c < 120; ++c) {
    const RandomCoupledCase instance = make_random_coupled_case(rng);
    const TrajectoryPair run =
        run_coupled(instance.spec, instance.oracle, instance.pair);
    ++runs;
    const std::string err = check_deviation_recurrence(
        run, instance.spec.schedule, instance.oracle.lipschitz());
    if (!err.empty() && first_error.empty()) {
      first_error = "run " + std::to_string(c) + ": " + err;
    }
  }
  report(1, first_error.empty(),
         "deviation recurrence and closed form over " + std::to_string(runs) +
             " mixed coupled runs" +
             (first_error.empty() ? "" : " [" + first_error + "]"));
}

// ---------------------------------------------------------------------------
// criterion 2: upper-bound conformance for gd / persgd (never exceeded) and
// rsgd (high-probability violations within the binomial slack, trial mean
// within the expectation bound).
void criterion2() {
  RngStream rng(2002, 0);
  std::size_t gd_viol = 0;
  std::size_t persgd_viol = 0;

  for (int c = 0; c < 50; ++c) {
    for (Algorithm alg : {Algorithm::gd, Algorithm::persgd}) {
      const std::size_t n = 2 + rng.uniform_index(10);
      const std::size_t d = 1 + rng.uniform_index(4);
      const LossOracle oracle = rng.uniform_index(2) == 0
                                    ? LossOracle::hinge()
                                    : LossOracle::absolute_deviation();
      RunSpec spec;
      spec.algorithm = alg;
      spec.T = alg == Algorithm::persgd ? n * (1 + rng.uniform_index(4))
                                        : 2 + rng.uniform_index(50);
      const double eta = 0.005 + 0.3 * rng.uniform01();
      if (rng.uniform_index(2) == 0) {
        spec.schedule = StepSchedule::constant(eta);
      } else {
        std::vector<double> etas(spec.T);
        for (double& e : etas) e = 0.005 + 0.3 * rng.uniform01();
        std::sort(etas.begin(), etas.end(), std::greater<double>());
        spec.schedule = StepSchedule::explicit_list(std::move(etas));
      }
      spec.ball = make_origin_ball(d, 0.5 + 4.0 * rng.uniform01());
      spec.start = zeros(d);
      spec.rng = RngStream(rng.next_u64(), 0);
      spec.iterate_cap = 0;
      NeighborPair pair = make_random_pair(oracle.family(), n, rng);

      const TrajectoryPair run = run_coupled(spec, oracle, pair);
      BoundInputs b{oracle.lipschitz(), spec.ball.radius, n, spec.T, spec.schedule};
      const double bound = alg == Algorithm::gd ? bound_gd(b) : bound_persgd(b);
      const double worst = std::max(run.max_delta, run.output_delta);
      if (worst > bound) {
        if (alg == Algorithm::gd) {
          ++gd_viol;
        } else {
          ++persgd_viol;
        }
      }
    }
  }
  report(2, gd_viol == 0 && persgd_viol == 0,
         "gd/persgd coupled runs never exceed their bounds (50 instances each; " +
             std::to_string(gd_viol) + "/" + std::to_string(persgd_viol) +
             " violations)");

  const std::size_t n = 10;
  const std::size_t trials = 1000;
  RngStream pair_rng(2003, 0);
  const NeighborPair pair = differing_hinge_pair(n, pair_rng);
  RunSpec spec;
  spec.algorithm = Algorithm::rsgd;
  spec.T = 101;
  spec.schedule = StepSchedule::constant(0.01);
  spec.ball = make_origin_ball(2, 10.0);
  spec.start = zeros(2);
  spec.rng = RngStream(2004, 0);
  spec.iterate_cap = 0;
  const UasEstimate est = estimate_uas(spec, LossOracle::hinge(), pair, trials,
                                       worker_count());
  const std::size_t allowed = binomial_allowance(trials, std::exp(-5.0));
  report(2, est.violations_of_bound <= allowed,
         "rsgd high-probability violations " +
             std::to_string(est.violations_of_bound) + " <= " +
             std::to_string(allowed) + " over 1000 trials at n=10");

  BoundInputs b{1.0, 10.0, n, spec.T, spec.schedule};
  const double mean_cap = bound_rsgd_expectation(b) *
                          (1.0 + 3.0 / std::sqrt(static_cast<double>(trials)));
  report(2, est.mean_final_delta <= mean_cap,
         "rsgd trial-mean delta " + std::to_string(est.mean_final_delta) +
             " within the expectation bound cap " + std::to_string(mean_cap));
}

// ---------------------------------------------------------------------------
// criterion 3: canonical adversarial full-batch run; closed-form trajectory
// oracle computed independently here.
double canonical_delta_oracle(std::size_t D, double kappa, double eta,
                              std::size_t n, std::size_t t) {
  if (t <= 1) return 0.0;
  const double Dd = static_cast<double>(D);
  const double drift =
      static_cast<double>(t - 1) * eta / (static_cast<double>(n) * kappa);
  const double walkw = eta * (static_cast<double>(n) - 1.0) / static_cast<double>(n);
  const double w = std::min(static_cast<double>(t - 2), Dd);
  const double walked = drift - walkw;
  return std::sqrt(w * walked * walked + (Dd - w) * drift * drift);
}

void criterion3() {
  const double eta = 0.1;
  const std::size_t T = 101;
  const std::size_t n = 10;
  const LowerBoundReport rep = lower_bound_experiment(
      LowerBoundVariant::gd_fullbatch, eta, T, n, 1, 100, 0);
  const bool final_ok = rep.mean_final_delta >= 0.45;
  const double oracle =
      canonical_delta_oracle(rep.D, rep.kappa, eta, n, rep.probe_step);
  const double rel = std::abs(rep.probe_delta_first_trial - oracle) / oracle;
  report(3, final_ok && rel <= 0.02,
         "canonical gd instance: delta_T = " + std::to_string(rep.mean_final_delta) +
             " >= 0.45; probe step " + std::to_string(rep.probe_step) +
             " within " + std::to_string(rel * 100.0) + "% of the closed form");
}

// ---------------------------------------------------------------------------
// criterion 4: stochastic lower-bound shape at eta=0.05, n=50, T=4n over 200
// trials for both variants.
void criterion4() {
  const double eta = 0.05;
  const std::size_t n = 50;
  const std::size_t T = 4 * n;
  const double threshold = 0.125 * std::min(1.0, double(T) / double(n)) * eta *
                           std::sqrt(static_cast<double>(T));
  for (LowerBoundVariant which : {LowerBoundVariant::rsgd, LowerBoundVariant::persgd}) {
    const LowerBoundReport rep =
        lower_bound_experiment(which, eta, T, n, 200, 0, 4004, worker_count());
    report(4, rep.mean_final_delta >= threshold,
           std::string(to_string(which)) + " mean delta_T " +
               std::to_string(rep.mean_final_delta) + " >= " +
               std::to_string(threshold) + " over 200 trials");
  }
}

// ---------------------------------------------------------------------------
// criterion 5: tuned full-batch excess-risk scaling over n in {16, 64, 256}.
void criterion5() {
  const std::vector<std::size_t> ns{16, 64, 256};
  const double R = 2.0;
  const double L = 1.0;
  std::vector<double> means;
  std::vector<double> xs;
  bool under_envelope = true;
  std::size_t identity_violations = 0;

  for (std::size_t n : ns) {
    RiskExperimentSpec spec;
    spec.dist = SyntheticDistribution::absolute_deviation(0.75);
    spec.algorithm = Algorithm::gd;
    spec.n = n;
    spec.T = n * n;
    spec.d = 5;
    spec.R = R;
    const double eta =
        R / (4.0 * L * std::sqrt(static_cast<double>(spec.T) * static_cast<double>(n)));
    spec.schedule = StepSchedule::constant(eta);
    spec.trials = 50;
    spec.seed = 5005;
    spec.erm_steps = 100000;
    spec.jobs = worker_count();
    const RiskExperimentResult result = risk_experiment(spec);
    identity_violations += result.violations.size();
    means.push_back(result.mean_excess);
    xs.push_back(static_cast<double>(n));
    const double envelope = 4.0 * L * R / std::sqrt(static_cast<double>(n));
    if (result.mean_excess > envelope) under_envelope = false;
  }
  const double slope = loglog_slope(xs, means);
  report(5, under_envelope,
         "mean excess risk under 4LR/sqrt(n) at n=16/64/256: " +
             std::to_string(means[0]) + ", " + std::to_string(means[1]) + ", " +
             std::to_string(means[2]));
  report(5, slope >= -0.65 && slope <= -0.35,
         "log-log excess-risk slope " + std::to_string(slope) +
             " within [-0.65, -0.35]");
  report(9, identity_violations == 0,
         "risk decomposition identity held on every scaling trial (" +
             std::to_string(identity_violations) + " violations)");
}

// ---------------------------------------------------------------------------
// criterion 6: multi-pass generalization gap within the closed-form bound.
void criterion6() {
  const SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.75);
  const MultipassResult result =
      multipass_experiment(dist, 4, 25, 0.01, 5, 1.0, 100, 6006, worker_count());
  const double cap = result.bound + 3.0 * result.gap_se;
  report(6, std::abs(result.mean_gap) <= cap,
         "multi-pass |mean gap| " + std::to_string(std::abs(result.mean_gap)) +
             " <= bound+3se " + std::to_string(cap) + " (bound " +
             std::to_string(result.bound) + ")");
}

// ---------------------------------------------------------------------------
// criterion 7: dp calibration exactness, exact noise cancellation on
// identical datasets, and the rsgd high-probability bound for noisy runs.
void criterion7() {
  const double s1 = calibrate_sigma(2.0, PrivacyParams{1.0, std::exp(-8.0)});
  const double s2 = calibrate_sigma(1.0, PrivacyParams{1.0, std::exp(-1.0)});
  const double half = calibrate_sigma(1.0, PrivacyParams{0.5, 0.01});
  const double full = calibrate_sigma(1.0, PrivacyParams{1.0, 0.01});
  const bool calib_ok = std::abs(s1 - 16.0) <= 16.0 * 1e-14 &&
                        std::abs(s2 - std::sqrt(8.0)) <= std::sqrt(8.0) * 1e-14 &&
                        std::abs(half - 2.0 * full) <= half * 1e-14;
  report(7, calib_ok, "sigma calibration exact on the three reference points");

  const std::size_t n = 5;
  Dataset base(n);
  for (std::size_t i = 0; i < n; ++i) base[i].tag = i % 2 == 0 ? 1.0 : -1.0;
  const NeighborPair same(base, 2, base[1]);
  bool cancel_ok = true;
  const double sigma = calibrate_sigma(1.0, PrivacyParams{1.0, default_beta(n)});
  for (std::uint64_t seed = 0; seed < 100 && cancel_ok; ++seed) {
    RunSpec spec;
    spec.algorithm = Algorithm::nsgd;
    spec.T = n * n;
    spec.schedule = StepSchedule::constant(0.05);
    spec.ball = make_origin_ball(3, 1.0);
    spec.start = zeros(3);
    spec.sigma = sigma;
    spec.sigma_set = true;
    spec.rng = RngStream(seed, 0);
    spec.iterate_cap = 0;
    const TrajectoryPair run = run_coupled(spec, LossOracle::hinge(), same);
    cancel_ok = run.max_delta == 0.0;
  }
  report(7, cancel_ok, "noisy coupled runs with S = S' stay at delta = 0 exactly "
                       "over 100 seeds");

  const std::size_t nn = 10;
  const std::size_t trials = 1000;
  RngStream pair_rng(7007, 0);
  const NeighborPair pair = differing_hinge_pair(nn, pair_rng);
  RunSpec spec;
  spec.algorithm = Algorithm::nsgd;
  spec.T = nn * nn;
  spec.schedule = StepSchedule::constant(0.01);
  spec.ball = make_origin_ball(3, 10.0);
  spec.start = zeros(3);
  spec.sigma = calibrate_sigma(1.0, PrivacyParams{1.0, default_beta(nn)});
  spec.sigma_set = true;
  spec.rng = RngStream(7008, 0);
  spec.iterate_cap = 0;
  const UasEstimate est = estimate_uas(spec, LossOracle::hinge(), pair, trials,
                                       worker_count());
  const std::size_t allowed = binomial_allowance(trials, std::exp(-double(nn) / 2.0));
  report(7, est.violations_of_bound <= allowed,
         "noisy-run high-probability violations " +
             std::to_string(est.violations_of_bound) + " <= " +
             std::to_string(allowed) + " over 1000 trials");
}

// ---------------------------------------------------------------------------
// criterion 8: dp excess-risk scaling between n=16 and n=64.
void criterion8() {
  std::vector<double> means;
  for (std::size_t n : {std::size_t{16}, std::size_t{64}}) {
    DpExperimentSpec spec;
    spec.dist = SyntheticDistribution::absolute_deviation(0.75);
    spec.n = n;
    spec.d = 5;
    spec.R = 2.0;
    spec.privacy = PrivacyParams{1.0, default_beta(n)};
    spec.trials = 50;
    spec.seed = 8008;
    spec.jobs = worker_count();
    const DpRiskReport rep = run_private_sco(spec);
    means.push_back(rep.mean_excess_risk);
  }
  report(8, means[1] <= 0.6 * means[0],
         "dp mean excess risk at n=64 (" + std::to_string(means[1]) +
             ") <= 0.6 x mean at n=16 (" + std::to_string(means[0]) + ")");
}

// ---------------------------------------------------------------------------
// criterion 9: property suites at 1e4 random cases (plus the identity checks
// already accumulated by criterion 5).
void criterion9() {
  const auto results = run_selfcheck(9009, 10000);
  bool ok = true;
  std::string detail;
  for (const auto& r : results) {
    if (!r.passed()) {
      ok = false;
      if (detail.empty()) detail = r.name + ": " + r.detail;
    }
  }
  report(9, ok, "property suites over 1e4 random cases" +
                    (detail.empty() ? std::string()
                                    : std::string(" [") + detail + "]"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures > 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
