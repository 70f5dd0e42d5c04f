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

#include "uaslab/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uaslab/errors.hpp"

namespace uaslab {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::gd:
      return "gd";
    case Algorithm::rsgd:
      return "rsgd";
    case Algorithm::persgd:
      return "persgd";
    case Algorithm::nsgd:
      return "nsgd";
  }
  return "unknown";
}

StepSchedule StepSchedule::constant(double eta) {
  if (!std::isfinite(eta) || eta < 0.0) {
    throw std::invalid_argument("StepSchedule: steps must be finite and >= 0");
  }
  StepSchedule s;
  s.constant_ = true;
  s.eta_ = eta;
  return s;
}

StepSchedule StepSchedule::explicit_list(std::vector<double> etas) {
  if (etas.empty()) {
    throw std::invalid_argument("StepSchedule: explicit list must be non-empty");
  }
  for (double e : etas) {
    if (!std::isfinite(e) || e < 0.0) {
      throw std::invalid_argument("StepSchedule: steps must be finite and >= 0");
    }
  }
  StepSchedule s;
  s.constant_ = false;
  s.etas_ = std::move(etas);
  return s;
}

double StepSchedule::constant_eta() const {
  if (!constant_) {
    throw std::invalid_argument("StepSchedule: not a constant schedule");
  }
  return eta_;
}

double StepSchedule::at(std::size_t t) const {
  if (t == 0) throw std::invalid_argument("StepSchedule: steps are 1-based");
  if (constant_) return eta_;
  if (t > etas_.size()) {
    throw std::invalid_argument("StepSchedule: step index past the explicit list");
  }
  return etas_[t - 1];
}

double StepSchedule::sum(std::size_t first, std::size_t last) const {
  if (last < first) return 0.0;
  if (constant_) return eta_ * static_cast<double>(last - first + 1);
  if (last > etas_.size()) {
    throw std::invalid_argument("StepSchedule: sum range past the explicit list");
  }
  double s = 0.0;
  for (std::size_t t = first; t <= last; ++t) s += etas_[t - 1];
  return s;
}

double StepSchedule::sum_sq(std::size_t first, std::size_t last) const {
  if (last < first) return 0.0;
  if (constant_) return eta_ * eta_ * static_cast<double>(last - first + 1);
  if (last > etas_.size()) {
    throw std::invalid_argument("StepSchedule: sum range past the explicit list");
  }
  double s = 0.0;
  for (std::size_t t = first; t <= last; ++t) s += etas_[t - 1] * etas_[t - 1];
  return s;
}

bool StepSchedule::non_increasing(std::size_t horizon) const {
  if (constant_) return true;
  const std::size_t upto = std::min(horizon, etas_.size());
  for (std::size_t i = 1; i < upto; ++i) {
    if (etas_[i] > etas_[i - 1]) return false;
  }
  return true;
}

void StepSchedule::require_length(std::size_t min_len) const {
  if (!constant_ && etas_.size() < min_len) {
    throw std::invalid_argument("StepSchedule: explicit list shorter than the horizon");
  }
}

void validate_run_spec(const RunSpec& spec, const LossOracle& oracle,
                       std::size_t n) {
  if (n == 0) throw std::invalid_argument("run: dataset must have n >= 1");
  if (spec.T == 0) throw std::invalid_argument("run: T must be >= 1");
  validate(spec.ball);
  if (spec.ball.dim() != spec.start.size()) {
    throw std::invalid_argument("run: start point dimension does not match the ball");
  }
  if (!all_finite(spec.start)) {
    throw std::invalid_argument("run: start point must be finite");
  }
  if (!spec.ball.contains(spec.start, 1e-9)) {
    throw std::invalid_argument("run: start point must lie in the feasible ball");
  }
  if (spec.start.size() < oracle.active_dim()) {
    throw std::invalid_argument("run: ambient dimension below the oracle's active dimension");
  }
  spec.schedule.require_length(spec.T);
  switch (spec.algorithm) {
    case Algorithm::gd:
    case Algorithm::rsgd:
      break;
    case Algorithm::persgd: {
      if (spec.T % n != 0) {
        throw std::invalid_argument("persgd: the epoch structure requires T = n*K");
      }
      if (!spec.schedule.non_increasing(spec.T)) {
        throw std::invalid_argument("persgd: step sizes must form a non-increasing sequence");
      }
      if (!spec.permutation.empty()) {
        if (spec.permutation.size() != n) {
          throw std::invalid_argument("persgd: permutation must cover [n]");
        }
        std::vector<bool> seen(n, false);
        for (std::size_t v : spec.permutation) {
          if (v >= n || seen[v]) {
            throw std::invalid_argument("persgd: permutation must be a bijection on [n]");
          }
          seen[v] = true;
        }
      }
      break;
    }
    case Algorithm::nsgd: {
      if (!spec.sigma_set) {
        throw std::invalid_argument("nsgd: sigma must be set (explicitly or from calibration)");
      }
      if (spec.sigma < 0.0 || !std::isfinite(spec.sigma)) {
        throw std::invalid_argument("nsgd: sigma must be finite and >= 0");
      }
      if (!spec.schedule.is_constant()) {
        throw std::invalid_argument("nsgd: a constant step size is required");
      }
      if (spec.T != n * n) {
        throw std::invalid_argument("nsgd: the schedule runs for T = n^2 iterates");
      }
      break;
    }
  }
}

namespace {

// Streaming accumulation of the per-algorithm averaged output, so iterate
// storage caps never affect the returned average.
class OutputAverager {
 public:
  OutputAverager(Algorithm algorithm, const StepSchedule& schedule,
                 std::size_t T, std::size_t n, std::size_t d)
      : algorithm_(algorithm),
        schedule_(&schedule),
        T_(T),
        n_(n),
        acc_(d, 0.0) {}

  void add(std::size_t t, const Vec& x) {
    double w = 0.0;
    switch (algorithm_) {
      case Algorithm::gd:
      case Algorithm::rsgd:
        w = schedule_->at(t);
        break;
      case Algorithm::nsgd:
        w = 1.0;
        break;
      case Algorithm::persgd:
        // Epoch-start iterates x_1^k only; the final epoch's interior
        // iterates never enter the output.
        if ((t - 1) % n_ == 0 && t + n_ - 1 <= T_) {
          w = schedule_->sum(t, t + n_ - 1);
        }
        break;
    }
    if (w != 0.0) {
      axpy(w, x, acc_);
      weight_sum_ += w;
    }
  }

  Vec finish(const Vec& fallback) const {
    if (!(weight_sum_ > 0.0)) return fallback;
    Vec out = acc_;
    scale(out, 1.0 / weight_sum_);
    return out;
  }

 private:
  Algorithm algorithm_;
  const StepSchedule* schedule_;
  std::size_t T_;
  std::size_t n_;
  Vec acc_;
  double weight_sum_ = 0.0;
};

struct CoupledInput {
  const Dataset* sprime = nullptr;
  bool pair_degenerate = false;
};

TrajectoryPair run_internal(const RunSpec& spec, const LossOracle& oracle,
                            const Dataset& s, const CoupledInput* coupled_in) {
  const std::size_t n = s.size();
  validate_run_spec(spec, oracle, n);
  const std::size_t T = spec.T;
  const std::size_t d = spec.start.size();
  const bool coupled = coupled_in != nullptr;
  const Dataset* sprime = coupled ? coupled_in->sprime : nullptr;
  if (coupled && sprime->size() != n) {
    throw std::invalid_argument("run_coupled: neighboring datasets must have equal size");
  }

  RngStream rng = spec.rng;

  std::vector<std::size_t> perm = spec.permutation;
  if (spec.algorithm == Algorithm::persgd && perm.empty()) {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
  }

  TrajectoryPair result;
  Trajectory& tx = result.on_s;
  tx.T = T;
  if (coupled) result.on_sprime.T = T;

  Vec x = spec.start;
  Vec y = spec.start;

  OutputAverager avg_x(spec.algorithm, spec.schedule, T, n, d);
  OutputAverager avg_y(spec.algorithm, spec.schedule, T, n, d);
  avg_x.add(1, x);
  if (coupled) {
    avg_y.add(1, y);
    result.deltas.reserve(T);
    result.deltas.push_back(distance(x, y));
    result.a_ts.reserve(T - 1);
  }
  if (spec.iterate_cap > 0) {
    tx.iterates.push_back(x);
    if (coupled) result.on_sprime.iterates.push_back(y);
  }

  const bool batch = spec.algorithm == Algorithm::gd;
  const bool noisy = spec.algorithm == Algorithm::nsgd && spec.sigma > 0.0;
  Vec gx(d, 0.0);
  Vec gy(d, 0.0);
  Vec gxp(d, 0.0);
  Vec noise(d, 0.0);
  double noise_sq_sum = 0.0;
  std::size_t noise_draws = 0;

  for (std::size_t t = 1; t < T; ++t) {
    const double eta = spec.schedule.at(t);

    std::size_t idx = 0;
    if (spec.algorithm == Algorithm::rsgd || spec.algorithm == Algorithm::nsgd) {
      idx = rng.uniform_index(n);
    } else if (spec.algorithm == Algorithm::persgd) {
      idx = perm[(t - 1) % n];
    }

    if (batch) {
      empirical_risk_subgradient_inplace(oracle, s, x, gx);
    } else {
      set_zero(gx);
      oracle.add_subgradient(x, s[idx], 1.0, gx);
    }

    if (coupled) {
      bool differs = false;
      if (batch) {
        empirical_risk_subgradient_inplace(oracle, *sprime, y, gy);
        empirical_risk_subgradient_inplace(oracle, *sprime, x, gxp);
        differs = !coupled_in->pair_degenerate;
      } else {
        set_zero(gy);
        oracle.add_subgradient(y, (*sprime)[idx], 1.0, gy);
        set_zero(gxp);
        oracle.add_subgradient(x, (*sprime)[idx], 1.0, gxp);
        differs = s[idx].tag != (*sprime)[idx].tag;
      }
      result.a_ts.push_back(distance(gx, gxp));
      if (differs && result.t0 == 0) result.t0 = t;
    }

    if (noisy) {
      gaussian_vector_inplace(rng, spec.sigma, noise);
      noise_sq_sum += squared_norm(noise);
      ++noise_draws;
    }

    axpy(-eta, gx, x);
    if (noisy) axpy(-eta, noise, x);
    project_inplace(spec.ball, x);
    if (!spec.ball.contains(x, 1e-9)) {
      throw invariant_violation("iterate left the feasible ball after projection");
    }

    if (coupled) {
      axpy(-eta, gy, y);
      if (noisy) axpy(-eta, noise, y);
      project_inplace(spec.ball, y);
      result.deltas.push_back(distance(x, y));
    }

    if (!batch) {
      tx.sampled_indices.push_back(static_cast<std::uint32_t>(idx));
      if (coupled) {
        result.on_sprime.sampled_indices.push_back(static_cast<std::uint32_t>(idx));
      }
    }

    avg_x.add(t + 1, x);
    if (coupled) avg_y.add(t + 1, y);
    if (tx.iterates.size() < spec.iterate_cap) {
      tx.iterates.push_back(x);
      if (coupled) result.on_sprime.iterates.push_back(y);
    }
  }

  tx.final_iterate = x;
  tx.averaged_output = avg_x.finish(spec.start);
  if (noisy) {
    tx.noise.draws = noise_draws;
    tx.noise.mean_squared_norm =
        noise_draws > 0 ? noise_sq_sum / static_cast<double>(noise_draws) : 0.0;
  }

  if (coupled) {
    Trajectory& ty = result.on_sprime;
    ty.final_iterate = y;
    ty.averaged_output = avg_y.finish(spec.start);
    ty.noise = tx.noise;  // shared draws
    result.output_delta = distance(tx.averaged_output, ty.averaged_output);
    result.max_delta = 0.0;
    for (double dlt : result.deltas) result.max_delta = std::max(result.max_delta, dlt);
  }

  return result;
}

Trajectory run_with(Algorithm expected, const RunSpec& spec,
                    const LossOracle& oracle, const Dataset& s) {
  if (spec.algorithm != expected) {
    throw std::invalid_argument("run: spec.algorithm does not match the runner");
  }
  return run_internal(spec, oracle, s, nullptr).on_s;
}

}  // namespace

Trajectory run_gd(const RunSpec& spec, const LossOracle& oracle,
                  const Dataset& s) {
  return run_with(Algorithm::gd, spec, oracle, s);
}

Trajectory run_rsgd(const RunSpec& spec, const LossOracle& oracle,
                    const Dataset& s) {
  return run_with(Algorithm::rsgd, spec, oracle, s);
}

Trajectory run_persgd(const RunSpec& spec, const LossOracle& oracle,
                      const Dataset& s) {
  return run_with(Algorithm::persgd, spec, oracle, s);
}

Trajectory run_nsgd(const RunSpec& spec, const LossOracle& oracle,
                    const Dataset& s) {
  return run_with(Algorithm::nsgd, spec, oracle, s);
}

Trajectory run_algorithm(const RunSpec& spec, const LossOracle& oracle,
                         const Dataset& s) {
  return run_internal(spec, oracle, s, nullptr).on_s;
}

TrajectoryPair run_coupled(const RunSpec& spec, const LossOracle& oracle,
                           const NeighborPair& pair) {
  const Dataset sprime = pair.neighbor();
  CoupledInput in;
  in.sprime = &sprime;
  in.pair_degenerate = pair.degenerate();
  return run_internal(spec, oracle, pair.base(), &in);
}

}  // namespace uaslab
