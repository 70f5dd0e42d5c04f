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

#include "uaslab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uaslab/dp.hpp"
#include "uaslab/errors.hpp"
#include "uaslab/risk.hpp"
#include "uaslab/selfcheck.hpp"
#include "uaslab/stability.hpp"

namespace uaslab {

namespace {

using nlohmann::json;

// Stream ids reserved for pair construction, clear of the per-trial range.
constexpr std::uint64_t kPairStream = 0x8000000000000000ull;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

LossOracle oracle_from_config(const ExperimentConfig& cfg) {
  switch (cfg.loss) {
    case LossFamily::hinge:
      return LossOracle::hinge();
    case LossFamily::absolute_deviation:
      return LossOracle::absolute_deviation();
    case LossFamily::adversarial_max:
      return LossOracle::adversarial_max(cfg.loss_active_dim, cfg.loss_nu,
                                         cfg.loss_kappa);
    case LossFamily::linear:
      return LossOracle::linear_drift(cfg.loss_active_dim, cfg.loss_kappa);
  }
  throw config_error("unsupported loss family");
}

SyntheticDistribution dist_from_config(const ExperimentConfig& cfg) {
  if (cfg.dist == "absolute-deviation") {
    return SyntheticDistribution::absolute_deviation(cfg.dist_p);
  }
  if (cfg.dist == "hinge-mixture") {
    return SyntheticDistribution::hinge_mixture(cfg.dist_p);
  }
  throw config_error("unknown dist: " + cfg.dist);
}

double resolve_L(const ExperimentConfig& cfg, const LossOracle& oracle) {
  if (cfg.L == 0.0) return oracle.lipschitz();
  if (std::abs(cfg.L - oracle.lipschitz()) > 1e-9) {
    throw config_error("config key 'L' disagrees with the loss family's Lipschitz constant");
  }
  return cfg.L;
}

// ceil(trials p) + 3 sqrt(trials p) violations allowed around the failure
// probability p, floored to an integer count.
std::size_t binomial_slack_threshold(std::size_t trials, double p) {
  const double tp = static_cast<double>(trials) * p;
  return static_cast<std::size_t>(std::floor(std::ceil(tp) + 3.0 * std::sqrt(tp)));
}

json estimate_json(const UasEstimate& est) {
  json j;
  j["mean_final_delta"] = est.mean_final_delta;
  j["mean_output_delta"] = est.mean_output_delta;
  j["final_quantiles"] = est.final_quantiles;
  j["output_quantiles"] = est.output_quantiles;
  j["violations_of_bound"] = est.violations_of_bound;
  j["reference_bound"] = est.reference_bound;
  j["reference_bound_kind"] = est.reference_bound_kind;
  return j;
}

struct InvariantSet {
  std::map<std::string, bool> held;
  std::vector<std::string> violations;

  void record(const std::string& name, bool ok, const std::string& detail = "") {
    held[name] = ok;
    if (!ok) violations.push_back(detail.empty() ? name : name + ": " + detail);
  }

  bool all_ok() const {
    for (const auto& [name, ok] : held) {
      if (!ok) return false;
    }
    return true;
  }
};

void stability_rows(const ExperimentConfig& cfg, const UasEstimate& est,
                    const std::vector<TrajectoryPair>& pairs, double L,
                    ResultTable& table) {
  const std::size_t T = cfg.T;
  const double R = cfg.R;
  const double n = static_cast<double>(cfg.n);
  const bool constant = cfg.schedule.is_constant();
  const bool persgd_ok = cfg.schedule.non_increasing(T);
  const double eta_const = constant ? cfg.schedule.constant_eta() : 0.0;

  for (std::size_t trial = 0; trial < pairs.size(); ++trial) {
    const TrajectoryPair& run = pairs[trial];
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
      ResultRow row;
      row.experiment = cfg.name;
      row.trial = trial;
      row.step = std::to_string(t);
      row.delta = run.deltas[t - 1];
      if (t < T) row.a_t = run.a_ts[t - 1];
      if (cfg.bound_overlay) {
        // Bounds at horizon t: step sums over 1..t-1.
        row.bound_gd = std::min(2.0 * R, 4.0 * L * (s1 / n + std::sqrt(s2)));
        row.bound_rsgd_exp = std::min(2.0 * R, 4.0 * L * (std::sqrt(s2) + s1 / n));
        if (constant) {
          const double tm1 = static_cast<double>(t - 1);
          row.bound_rsgd_hp = std::min(
              2.0 * R, 4.0 * L * (eta_const * std::sqrt(tm1) + eta_const * tm1 / n));
        }
        if (persgd_ok) {
          row.bound_persgd =
              std::min(2.0 * R, 2.0 * L * (std::sqrt(s2) + 2.0 * s1 / n));
        }
      }
      table.rows.push_back(std::move(row));
      if (t < T) {
        const double eta = cfg.schedule.at(t);
        s1 += eta;
        s2 += eta * eta;
      }
    }

    auto summary_row = [&](const char* kind, double value, std::string notes) {
      ResultRow row;
      row.experiment = cfg.name;
      row.trial = trial;
      row.step = kind;
      row.delta = value;
      row.notes = std::move(notes);
      table.rows.push_back(std::move(row));
    };
    std::string final_notes = "t0=" + std::to_string(run.t0);
    const double worst = std::max(est.per_trial_max_deltas[trial],
                                  est.per_trial_output_deltas[trial]);
    final_notes += ";bound=" + format_double(est.reference_bound);
    final_notes += ";violation=";
    final_notes += worst > est.reference_bound ? "1" : "0";
    summary_row("final", run.deltas.back(), final_notes);
    summary_row("output", run.output_delta, "");
    summary_row("max", run.max_delta, "");
  }
}

ExperimentOutcome run_stability(const ExperimentConfig& cfg, std::size_t jobs) {
  const LossOracle oracle = oracle_from_config(cfg);
  const double L = resolve_L(cfg, oracle);

  NeighborPair pair = [&]() {
    if (cfg.pair_kind == "canonical") return make_lower_bound_pair(cfg.n);
    RngStream pair_rng(cfg.seed, kPairStream);
    NeighborPair random = make_random_pair(cfg.loss, cfg.n, pair_rng);
    if (cfg.pair_kind == "degenerate") {
      // S' == S: the replacement repeats the entry it replaces.
      return NeighborPair(random.base(), random.replaced_index(),
                          random.base()[random.replaced_index() - 1]);
    }
    return random;
  }();

  RunSpec spec;
  spec.algorithm = cfg.algorithm;
  spec.T = cfg.T;
  spec.schedule = cfg.schedule;
  spec.ball = make_origin_ball(cfg.d, cfg.R);
  spec.start = zeros(cfg.d);
  spec.iterate_cap = 0;
  spec.rng = RngStream(cfg.seed, 0);
  if (cfg.algorithm == Algorithm::nsgd) {
    spec.sigma = cfg.sigma >= 0.0
                     ? cfg.sigma
                     : calibrate_sigma(L, PrivacyParams{cfg.alpha, cfg.beta});
    spec.sigma_set = true;
  }

  std::vector<TrajectoryPair> pairs;
  const UasEstimate est = estimate_uas(spec, oracle, pair, cfg.trials, jobs, &pairs);

  InvariantSet inv;
  std::string recurrence_err;
  for (std::size_t i = 0; i < pairs.size() && recurrence_err.empty(); ++i) {
    recurrence_err = check_deviation_recurrence(pairs[i], cfg.schedule, L);
    if (!recurrence_err.empty()) {
      recurrence_err = "trial " + std::to_string(i) + ": " + recurrence_err;
    }
  }
  inv.record("coupled-run-recurrence", recurrence_err.empty(), recurrence_err);

  switch (cfg.algorithm) {
    case Algorithm::gd:
      inv.record("gd-within-bound", est.violations_of_bound == 0,
                 std::to_string(est.violations_of_bound) + " trials exceeded the bound");
      break;
    case Algorithm::persgd:
      inv.record("persgd-within-bound", est.violations_of_bound == 0,
                 std::to_string(est.violations_of_bound) + " trials exceeded the bound");
      break;
    case Algorithm::rsgd:
    case Algorithm::nsgd: {
      if (cfg.schedule.is_constant()) {
        const double p = std::exp(-static_cast<double>(cfg.n) / 2.0);
        const std::size_t allowed = binomial_slack_threshold(cfg.trials, p);
        inv.record("rsgd-highprob-violations-within-slack",
                   est.violations_of_bound <= allowed,
                   std::to_string(est.violations_of_bound) + " > allowed " +
                       std::to_string(allowed));
      }
      BoundInputs b{L, cfg.R, cfg.n, cfg.T, cfg.schedule};
      const double exp_bound = bound_rsgd_expectation(b);
      const double slacked =
          exp_bound * (1.0 + 3.0 / std::sqrt(static_cast<double>(cfg.trials)));
      inv.record("rsgd-mean-within-expectation-bound",
                 est.mean_final_delta <= slacked,
                 format_double(est.mean_final_delta) + " > " + format_double(slacked));
      break;
    }
  }

  ExperimentOutcome out;
  stability_rows(cfg, est, pairs, L, out.table);

  json agg = estimate_json(est);
  agg["uniform_stability_gamma"] = L * est.mean_output_delta;  // gamma <= L * delta
  BoundInputs b{L, cfg.R, cfg.n, cfg.T, cfg.schedule};
  json bounds;
  bounds["gd"] = bound_gd(b);
  bounds["rsgd_expectation"] = bound_rsgd_expectation(b);
  if (cfg.schedule.is_constant()) {
    const HighProbBound hp = bound_rsgd_highprob(b);
    bounds["rsgd_highprob"] = hp.bound;
    bounds["rsgd_highprob_failure"] = hp.failure_prob;
    bounds["generic_lower_floor"] = generic_lower_floor(b);
  }
  if (cfg.schedule.non_increasing(cfg.T)) bounds["persgd"] = bound_persgd(b);
  if (cfg.T <= cfg.n) {
    bounds["rsgd_small_T"] = bound_rsgd_small_T(b);
    if (cfg.schedule.non_increasing(cfg.T)) {
      bounds["persgd_small_T"] = bound_persgd_small_T(b);
    }
  }
  agg["closed_form_bounds"] = bounds;

  out.invariants = inv.held;
  out.violations = inv.violations;
  out.invariants_ok = inv.all_ok();
  out.summary_json = agg.dump();  // embedded later by the caller
  return out;
}

ExperimentOutcome run_lower_bound(const ExperimentConfig& cfg, std::size_t jobs) {
  LowerBoundVariant which = LowerBoundVariant::gd_fullbatch;
  if (cfg.variant == "rsgd") which = LowerBoundVariant::rsgd;
  if (cfg.variant == "persgd") which = LowerBoundVariant::persgd;

  const double eta = cfg.schedule.constant_eta();
  const LowerBoundReport report = lower_bound_experiment(
      which, eta, cfg.T, cfg.n, cfg.trials, cfg.d, cfg.seed, jobs);

  InvariantSet inv;
  double threshold = 0.0;
  if (which == LowerBoundVariant::gd_fullbatch) {
    threshold = 0.4 * eta * std::sqrt(static_cast<double>(report.D));
    inv.record("lower-bound-gd-threshold",
               report.mean_final_delta >= threshold,
               format_double(report.mean_final_delta) + " < " + format_double(threshold));
  } else {
    const double td = static_cast<double>(cfg.T);
    const double nd = static_cast<double>(cfg.n);
    threshold = 0.125 * std::min(1.0, td / nd) * eta * std::sqrt(td);
    inv.record("lower-bound-mean-threshold",
               report.mean_final_delta >= threshold,
               format_double(report.mean_final_delta) + " < " + format_double(threshold));
  }

  ExperimentOutcome out;
  for (std::size_t t = 1; t <= report.first_trial_delta_curve.size(); ++t) {
    ResultRow row;
    row.experiment = cfg.name;
    row.trial = 0;
    row.step = std::to_string(t);
    row.delta = report.first_trial_delta_curve[t - 1];
    out.table.rows.push_back(std::move(row));
  }
  {
    ResultRow row;
    row.experiment = cfg.name;
    row.trial = 0;
    row.step = "probe";
    row.delta = report.probe_delta_first_trial;
    row.notes = "probe_step=" + std::to_string(report.probe_step);
    out.table.rows.push_back(std::move(row));
  }
  for (std::size_t trial = 0; trial < report.per_trial_final_deltas.size(); ++trial) {
    ResultRow row;
    row.experiment = cfg.name;
    row.trial = trial;
    row.step = "final";
    row.delta = report.per_trial_final_deltas[trial];
    row.notes = "reference=" + format_double(report.reference_expression);
    out.table.rows.push_back(std::move(row));
  }

  json agg;
  agg["variant"] = to_string(report.which);
  agg["D"] = report.D;
  agg["kappa"] = report.kappa;
  agg["nu"] = report.nu;
  agg["mean_final_delta"] = report.mean_final_delta;
  agg["mean_output_delta"] = report.mean_output_delta;
  agg["reference_expression"] = report.reference_expression;
  agg["threshold"] = threshold;
  agg["probe_step"] = report.probe_step;
  agg["probe_delta"] = report.probe_delta_first_trial;

  out.invariants = inv.held;
  out.violations = inv.violations;
  out.invariants_ok = inv.all_ok();
  out.summary_json = agg.dump();
  return out;
}

ExperimentOutcome run_risk(const ExperimentConfig& cfg, std::size_t jobs) {
  RiskExperimentSpec spec;
  spec.dist = dist_from_config(cfg);
  spec.algorithm = cfg.algorithm;
  spec.n = cfg.n;
  spec.T = cfg.T;
  spec.d = cfg.d;
  spec.R = cfg.R;
  spec.trials = cfg.trials;
  spec.seed = cfg.seed;
  spec.erm_steps = cfg.erm_steps;
  spec.fresh_m = cfg.fresh_sample;
  spec.jobs = jobs;

  const LossOracle oracle = spec.dist.make_oracle();
  const double L = resolve_L(cfg, oracle);
  if (cfg.eta_tuned) {
    const double eta =
        cfg.R / (4.0 * L * std::sqrt(static_cast<double>(cfg.T) *
                                     static_cast<double>(cfg.n)));
    spec.schedule = StepSchedule::constant(eta);
  } else {
    spec.schedule = cfg.schedule;
  }

  const RiskExperimentResult result = risk_experiment(spec);

  InvariantSet inv;
  inv.record("risk-decomposition-identity", result.violations.empty(),
             result.violations.empty() ? "" : result.violations.front());
  const double envelope = 4.0 * L * cfg.R / std::sqrt(static_cast<double>(cfg.n));
  if (cfg.eta_tuned) {
    inv.record("mean-excess-within-envelope", result.mean_excess <= envelope,
               format_double(result.mean_excess) + " > " + format_double(envelope));
  }

  ExperimentOutcome out;
  for (std::size_t trial = 0; trial < result.reports.size(); ++trial) {
    const RiskReport& rep = result.reports[trial];
    auto add = [&](const char* kind, double value, std::string notes = "") {
      ResultRow row;
      row.experiment = cfg.name;
      row.trial = trial;
      row.step = kind;
      row.delta = value;
      row.notes = std::move(notes);
      out.table.rows.push_back(std::move(row));
    };
    add("eps_gen", rep.eps_gen);
    add("eps_opt", rep.eps_opt);
    add("eps_approx", rep.eps_approx);
    add("eps_risk", rep.eps_risk, "bound=" + format_double(envelope));
    add("residual", rep.decomposition_residual);
    add("gap_mc", rep.gap_mc,
        "m=" + std::to_string(rep.fresh_sample_size) +
            ";se_envelope=" + format_double(rep.gap_mc_se_envelope));
  }

  json agg;
  agg["mean_excess_risk"] = result.mean_excess;
  agg["mean_generalization_gap"] = result.mean_gap;
  agg["excess_envelope_4LR_sqrt_n"] = envelope;
  if (spec.schedule.is_constant()) agg["eta"] = spec.schedule.constant_eta();

  out.invariants = inv.held;
  out.violations = inv.violations;
  out.invariants_ok = inv.all_ok();
  out.summary_json = agg.dump();
  return out;
}

ExperimentOutcome run_multipass(const ExperimentConfig& cfg, std::size_t jobs) {
  const SyntheticDistribution dist = dist_from_config(cfg);
  const double eta = cfg.schedule.constant_eta();
  const MultipassResult result = multipass_experiment(
      dist, cfg.K, cfg.n, eta, cfg.d, cfg.R, cfg.trials, cfg.seed, jobs);

  InvariantSet inv;
  const double slacked = result.bound + 3.0 * result.gap_se;
  inv.record("multipass-gap-within-bound",
             std::abs(result.mean_gap) <= slacked,
             format_double(std::abs(result.mean_gap)) + " > " + format_double(slacked));

  ExperimentOutcome out;
  for (std::size_t trial = 0; trial < result.gaps.size(); ++trial) {
    ResultRow row;
    row.experiment = cfg.name;
    row.trial = trial;
    row.step = "gap";
    row.delta = result.gaps[trial];
    row.notes = "bound=" + format_double(result.bound);
    out.table.rows.push_back(std::move(row));
  }

  json agg;
  agg["mean_gap"] = result.mean_gap;
  agg["gap_std"] = result.gap_std;
  agg["gap_se"] = result.gap_se;
  agg["bound"] = result.bound;
  agg["bound_plus_3se"] = slacked;
  agg["K"] = result.K;

  out.invariants = inv.held;
  out.violations = inv.violations;
  out.invariants_ok = inv.all_ok();
  out.summary_json = agg.dump();
  return out;
}

ExperimentOutcome run_dp(const ExperimentConfig& cfg, std::size_t jobs) {
  DpExperimentSpec spec;
  spec.dist = dist_from_config(cfg);
  spec.n = cfg.n;
  spec.d = cfg.d;
  spec.R = cfg.R;
  spec.privacy = PrivacyParams{cfg.alpha, cfg.beta};
  spec.trials = cfg.trials;
  spec.seed = cfg.seed;
  spec.jobs = jobs;
  if (cfg.sigma >= 0.0) spec.sigma_override = cfg.sigma;
  if (!cfg.eta_tuned) spec.eta_override = cfg.schedule.constant_eta();

  const DpRiskReport report = run_private_sco(spec);

  ExperimentOutcome out;
  for (std::size_t trial = 0; trial < report.per_trial_excess.size(); ++trial) {
    ResultRow row;
    row.experiment = cfg.name;
    row.trial = trial;
    row.step = "excess";
    row.delta = report.per_trial_excess[trial];
    row.notes = "envelope=" + format_double(report.envelope);
    out.table.rows.push_back(std::move(row));
  }

  json agg;
  agg["sigma"] = report.sigma;
  agg["eta"] = report.eta;
  agg["T"] = report.T;
  agg["mean_excess_risk"] = report.mean_excess_risk;
  agg["envelope"] = report.envelope;
  agg["alpha"] = cfg.alpha;
  agg["beta"] = cfg.beta;

  out.invariants_ok = true;
  out.summary_json = agg.dump();
  return out;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                 bool with_timestamp) {
  ExperimentOutcome out;
  switch (cfg.kind) {
    case ExperimentKind::stability:
      out = run_stability(cfg, jobs);
      break;
    case ExperimentKind::lower_bound:
      out = run_lower_bound(cfg, jobs);
      break;
    case ExperimentKind::risk:
      out = run_risk(cfg, jobs);
      break;
    case ExperimentKind::multipass:
      out = run_multipass(cfg, jobs);
      break;
    case ExperimentKind::dp:
      out = run_dp(cfg, jobs);
      break;
  }

  json summary;
  summary["tool"] = "uaslab";
  if (with_timestamp) summary["generated_at"] = utc_timestamp();
  summary["experiment"] = to_string(cfg.kind);
  summary["name"] = cfg.name;
  summary["seed"] = cfg.seed;
  summary["trials"] = cfg.trials;
  summary["config"] = cfg.raw;
  summary["aggregates"] = json::parse(out.summary_json);
  json inv;
  for (const auto& [name, ok] : out.invariants) inv[name] = ok ? "pass" : "fail";
  summary["invariants"] = inv;
  summary["violations"] = out.violations;
  summary["status"] = out.invariants_ok ? "ok" : "invariant-violation";
  out.summary_json = summary.dump(2);
  out.summary_json.push_back('\n');
  return out;
}

int execute_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                       const std::string& out_override) {
  const ExperimentOutcome outcome = run_experiment(cfg, jobs, true);

  std::string base = !out_override.empty() ? out_override
                     : !cfg.out.empty()    ? cfg.out
                                           : cfg.name;
  std::string csv_path;
  std::string json_path;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") {
    csv_path = base;
    json_path = base.substr(0, base.size() - 4) + ".json";
  } else {
    csv_path = base + ".csv";
    json_path = base + ".json";
  }

  try {
    const std::filesystem::path parent = std::filesystem::path(csv_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
  } catch (const std::filesystem::filesystem_error& e) {
    throw io_error(std::string("cannot create output directory: ") + e.what());
  }

  outcome.table.write_csv(csv_path);
  std::ofstream jf(json_path, std::ios::binary);
  if (!jf) throw io_error("cannot open for writing: " + json_path);
  jf.write(outcome.summary_json.data(),
           static_cast<std::streamsize>(outcome.summary_json.size()));
  if (!jf) throw io_error("write failed: " + json_path);

  return outcome.invariants_ok ? 0 : 1;
}

std::string render_bounds_report(const ExperimentConfig& cfg) {
  std::ostringstream os;
  const double L = cfg.L > 0.0 ? cfg.L : 1.0;
  BoundInputs b{L, cfg.R, cfg.n, cfg.T, cfg.schedule};
  os << "closed-form bounds (L=" << format_double(L) << ", R=" << format_double(cfg.R)
     << ", n=" << cfg.n << ", T=" << cfg.T << ")\n";
  os << "  gd:                 " << format_double(bound_gd(b)) << "\n";
  os << "  rsgd (expectation): " << format_double(bound_rsgd_expectation(b)) << "\n";
  if (cfg.schedule.is_constant()) {
    const HighProbBound hp = bound_rsgd_highprob(b);
    os << "  rsgd (high prob.):  " << format_double(hp.bound)
       << "  [failure prob " << format_double(hp.failure_prob) << "]\n";
    os << "  generic floor:      " << format_double(generic_lower_floor(b)) << "\n";
  }
  if (cfg.schedule.non_increasing(cfg.T)) {
    os << "  persgd:             " << format_double(bound_persgd(b)) << "\n";
  }
  if (cfg.T <= cfg.n) {
    os << "  rsgd (T<=n):        " << format_double(bound_rsgd_small_T(b)) << "\n";
    if (cfg.schedule.non_increasing(cfg.T)) {
      os << "  persgd (T<=n):      " << format_double(bound_persgd_small_T(b)) << "\n";
    }
  }
  if (cfg.K > 0 && cfg.schedule.is_constant()) {
    os << "  multipass gen (K=" << cfg.K << "): "
       << format_double(multipass_gen_bound(L, cfg.schedule.constant_eta(), cfg.K, cfg.n))
       << "\n";
  }
  if (cfg.raw.count("alpha") != 0 || cfg.raw.count("beta") != 0) {
    const double beta = cfg.beta > 0.0 ? cfg.beta : default_beta(cfg.n);
    const PrivacyParams p{cfg.alpha, beta};
    os << "  dp sigma:           " << format_double(calibrate_sigma(L, p)) << "\n";
    if (cfg.d > 0) {
      os << "  dp tuned eta:       "
         << format_double(tuned_eta(cfg.R, L, cfg.n, cfg.d, p)) << "\n";
      os << "  dp risk envelope:   "
         << format_double(dp_risk_envelope(cfg.R, L, cfg.n, cfg.d, p)) << "\n";
    }
  }
  return os.str();
}

}  // namespace uaslab
