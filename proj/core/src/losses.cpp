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

#include "uaslab/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uaslab {

namespace {

void check_tag_finite(const DataPoint& z) {
  if (!std::isfinite(z.tag)) {
    throw std::invalid_argument("DataPoint tag must be finite");
  }
}

}  // namespace

NeighborPair::NeighborPair(Dataset base, std::size_t replaced_index,
                           DataPoint replacement)
    : base_(std::move(base)),
      replaced_index_(replaced_index),
      replacement_(replacement) {
  if (base_.empty()) {
    throw std::invalid_argument("NeighborPair: dataset must have n >= 1");
  }
  if (replaced_index_ < 1 || replaced_index_ > base_.size()) {
    throw std::invalid_argument("NeighborPair: replaced_index must lie in [1, n]");
  }
  check_tag_finite(replacement_);
  for (const DataPoint& z : base_) check_tag_finite(z);
}

Dataset NeighborPair::neighbor() const {
  Dataset prime = base_;
  prime[replaced_index_ - 1] = replacement_;
  return prime;
}

bool NeighborPair::degenerate() const {
  return base_[replaced_index_ - 1].tag == replacement_.tag;
}

const char* to_string(LossFamily family) {
  switch (family) {
    case LossFamily::adversarial_max:
      return "adversarial-max";
    case LossFamily::hinge:
      return "hinge";
    case LossFamily::absolute_deviation:
      return "absolute-deviation";
    case LossFamily::linear:
      return "linear";
  }
  return "unknown";
}

LossOracle::LossOracle(LossFamily family, std::size_t active_dim, double nu,
                       double kappa, double lipschitz)
    : family_(family),
      active_dim_(active_dim),
      nu_(nu),
      kappa_(kappa),
      lipschitz_(lipschitz) {}

LossOracle LossOracle::adversarial_max(std::size_t active_dim, double nu,
                                       double kappa) {
  if (active_dim == 0) {
    throw std::invalid_argument("adversarial_max: active dimension must be >= 1");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("adversarial_max: nu must be > 0");
  }
  const double sqrt_d = std::sqrt(static_cast<double>(active_dim));
  if (!(kappa >= sqrt_d) || !std::isfinite(kappa)) {
    throw std::invalid_argument(
        "adversarial_max: kappa must be >= sqrt(D) so the drift branch is 1-Lipschitz");
  }
  return LossOracle(LossFamily::adversarial_max, active_dim, nu, kappa, 1.0);
}

LossOracle LossOracle::hinge() {
  return LossOracle(LossFamily::hinge, 1, 0.0, 0.0, 1.0);
}

LossOracle LossOracle::absolute_deviation() {
  return LossOracle(LossFamily::absolute_deviation, 1, 0.0, 0.0, 1.0);
}

LossOracle LossOracle::linear_drift(std::size_t active_dim, double kappa) {
  if (active_dim == 0) {
    throw std::invalid_argument("linear_drift: active dimension must be >= 1");
  }
  const double sqrt_d = std::sqrt(static_cast<double>(active_dim));
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("linear_drift: kappa must be > 0");
  }
  return LossOracle(LossFamily::linear, active_dim, 0.0, kappa, sqrt_d / kappa);
}

void LossOracle::check_inputs(const Vec& x, const DataPoint& z) const {
  if (x.size() < active_dim_) {
    throw std::invalid_argument("LossOracle: point dimension below the family's active dimension");
  }
  if (x.empty()) {
    throw std::invalid_argument("LossOracle: empty point");
  }
  check_tag_finite(z);
  switch (family_) {
    case LossFamily::adversarial_max:
      if (z.tag != 0.0 && z.tag != 1.0) {
        throw std::invalid_argument("adversarial-max: tag must be 0 or 1");
      }
      break;
    case LossFamily::hinge:
      if (z.tag != 1.0 && z.tag != -1.0) {
        throw std::invalid_argument("hinge: tag must be +1 or -1");
      }
      break;
    default:
      break;
  }
}

double LossOracle::value(const Vec& x, const DataPoint& z) const {
  check_inputs(x, z);
  switch (family_) {
    case LossFamily::adversarial_max: {
      if (z.tag == 1.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < active_dim_; ++i) s -= x[i];
        return s / kappa_;
      }
      double best = 0.0;  // branch 0
      for (std::size_t i = 0; i < active_dim_; ++i) {
        const double v = x[i] - nu_;
        if (v > best) best = v;
      }
      return best;
    }
    case LossFamily::hinge: {
      const double v = 1.0 - z.tag * x[0];
      return v > 0.0 ? v : 0.0;
    }
    case LossFamily::absolute_deviation:
      return std::abs(x[0] - z.tag);
    case LossFamily::linear: {
      double s = 0.0;
      for (std::size_t i = 0; i < active_dim_; ++i) s -= x[i];
      return s / kappa_;
    }
  }
  throw std::logic_error("unreachable loss family");
}

void LossOracle::add_subgradient(const Vec& x, const DataPoint& z, double coeff,
                                 Vec& out) const {
  check_inputs(x, z);
  if (out.size() != x.size()) {
    throw std::invalid_argument("add_subgradient: output dimension mismatch");
  }
  switch (family_) {
    case LossFamily::adversarial_max: {
      if (z.tag == 1.0) {
        const double w = -coeff / kappa_;
        for (std::size_t i = 0; i < active_dim_; ++i) out[i] += w;
        return;
      }
      // Lowest-index active branch; strict comparison keeps exact ties on the
      // first maximizer and lets branch 0 win any tie it participates in.
      double best = 0.0;
      std::size_t branch = 0;
      for (std::size_t i = 0; i < active_dim_; ++i) {
        const double v = x[i] - nu_;
        if (v > best) {
          best = v;
          branch = i + 1;
        }
      }
      if (branch > 0) out[branch - 1] += coeff;
      return;
    }
    case LossFamily::hinge: {
      // Branch 0 is the flat branch; at the kink it wins the tie.
      if (1.0 - z.tag * x[0] > 0.0) out[0] -= coeff * z.tag;
      return;
    }
    case LossFamily::absolute_deviation: {
      // max{x_1 - tag, tag - x_1} with the positive branch indexed first.
      const double v1 = x[0] - z.tag;
      if (-v1 > v1) {
        out[0] -= coeff;
      } else {
        out[0] += coeff;
      }
      return;
    }
    case LossFamily::linear: {
      const double w = -coeff / kappa_;
      for (std::size_t i = 0; i < active_dim_; ++i) out[i] += w;
      return;
    }
  }
  throw std::logic_error("unreachable loss family");
}

Vec LossOracle::subgradient(const Vec& x, const DataPoint& z) const {
  if (!all_finite(x)) {
    throw std::invalid_argument("subgradient: point has non-finite entries");
  }
  Vec out(x.size(), 0.0);
  add_subgradient(x, z, 1.0, out);
  return out;
}

double empirical_risk(const LossOracle& oracle, const Dataset& s, const Vec& x) {
  if (s.empty()) {
    throw std::invalid_argument("empirical_risk: dataset must have n >= 1");
  }
  if (!all_finite(x)) {
    throw std::invalid_argument("empirical_risk: point has non-finite entries");
  }
  double sum = 0.0;
  for (const DataPoint& z : s) sum += oracle.value(x, z);
  return sum / static_cast<double>(s.size());
}

Vec empirical_risk_subgradient(const LossOracle& oracle, const Dataset& s,
                               const Vec& x) {
  Vec out(x.size(), 0.0);
  empirical_risk_subgradient_inplace(oracle, s, x, out);
  return out;
}

void empirical_risk_subgradient_inplace(const LossOracle& oracle,
                                        const Dataset& s, const Vec& x,
                                        Vec& out) {
  if (s.empty()) {
    throw std::invalid_argument("empirical_risk_subgradient: dataset must have n >= 1");
  }
  if (!all_finite(x)) {
    throw std::invalid_argument("empirical_risk_subgradient: point has non-finite entries");
  }
  out.assign(x.size(), 0.0);
  const double coeff = 1.0 / static_cast<double>(s.size());
  for (const DataPoint& z : s) oracle.add_subgradient(x, z, coeff, out);
}

NeighborPair make_lower_bound_pair(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("make_lower_bound_pair: n must be >= 1");
  }
  Dataset base(n, DataPoint{0.0});
  base[0].tag = 1.0;
  return NeighborPair(std::move(base), 1, DataPoint{0.0});
}

NeighborPair make_random_pair(LossFamily family, std::size_t n,
                              RngStream& rng) {
  if (n == 0) {
    throw std::invalid_argument("make_random_pair: n must be >= 1");
  }
  auto draw = [&rng, family]() -> DataPoint {
    switch (family) {
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
  };
  Dataset base(n);
  for (DataPoint& z : base) z = draw();
  const std::size_t idx = rng.uniform_index(n) + 1;
  return NeighborPair(std::move(base), idx, draw());
}

}  // namespace uaslab
