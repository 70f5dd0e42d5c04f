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

#ifndef UASLAB_LOSSES_HPP_
#define UASLAB_LOSSES_HPP_

#include <cstddef>
#include <vector>

#include "uaslab/rng.hpp"
#include "uaslab/vec.hpp"

namespace uaslab {

// One sample z. The scalar tag is interpreted per loss family:
//   adversarial-max: 0 selects the piecewise-max branch set, 1 the drift;
//   hinge:           the label, +1 or -1;
//   absolute-deviation: the target value;
//   linear:          ignored.
struct DataPoint {
  double tag = 0.0;
};

using Dataset = std::vector<DataPoint>;

// A dataset together with a single-entry replacement. replaced_index is
// 1-based; neighbor() materializes S'.
class NeighborPair {
 public:
  NeighborPair(Dataset base, std::size_t replaced_index, DataPoint replacement);

  const Dataset& base() const { return base_; }
  std::size_t replaced_index() const { return replaced_index_; }
  const DataPoint& replacement() const { return replacement_; }

  Dataset neighbor() const;

  // True when the replacement carries the same tag as the entry it replaces,
  // i.e. S' == S.
  bool degenerate() const;

 private:
  Dataset base_;
  std::size_t replaced_index_;
  DataPoint replacement_;
};

enum class LossFamily { adversarial_max, hinge, absolute_deviation, linear };

const char* to_string(LossFamily family);

// Convex L-Lipschitz loss f(., z) with a deterministic extreme-point
// subgradient rule. For piecewise-max families the active branch is the
// LOWEST-INDEX maximizer, with the constant-0 branch indexed 0; branch values
// are compared with tolerance zero so that exact floating-point ties resolve
// to the lowest index.
class LossOracle {
 public:
  // max{0, x_1 - nu, ..., x_D - nu} for tag 0; <r, x>/kappa for tag 1, where
  // r = (-1, ..., -1, 0, ...) on the first D coordinates. Requires nu > 0 and
  // kappa >= sqrt(D) so the drift branch stays 1-Lipschitz.
  static LossOracle adversarial_max(std::size_t active_dim, double nu,
                                    double kappa);

  // max(0, 1 - tag * x_1), tag in {-1, +1}.
  static LossOracle hinge();

  // |x_1 - tag|.
  static LossOracle absolute_deviation();

  // <r, x>/kappa with the same drift vector as adversarial_max, all tags.
  static LossOracle linear_drift(std::size_t active_dim, double kappa);

  double value(const Vec& x, const DataPoint& z) const;

  // out += coeff * (chosen subgradient at x). The per-point primitive used by
  // the empirical-mean accumulation; validates the tag and dimension but not
  // per-entry finiteness (callers check the iterate once per step).
  void add_subgradient(const Vec& x, const DataPoint& z, double coeff,
                       Vec& out) const;

  Vec subgradient(const Vec& x, const DataPoint& z) const;

  double lipschitz() const { return lipschitz_; }
  LossFamily family() const { return family_; }
  std::size_t active_dim() const { return active_dim_; }
  double offset() const { return nu_; }
  double drift_scale() const { return kappa_; }

 private:
  LossOracle(LossFamily family, std::size_t active_dim, double nu,
             double kappa, double lipschitz);

  void check_inputs(const Vec& x, const DataPoint& z) const;

  LossFamily family_;
  std::size_t active_dim_;
  double nu_;
  double kappa_;
  double lipschitz_;
};

// F_S(x) = (1/n) sum_i f(x, z_i). Rejects empty datasets.
double empirical_risk(const LossOracle& oracle, const Dataset& s, const Vec& x);

// Mean of per-point subgradients under the oracle's tie rule; norm <= L.
Vec empirical_risk_subgradient(const LossOracle& oracle, const Dataset& s,
                               const Vec& x);
void empirical_risk_subgradient_inplace(const LossOracle& oracle,
                                        const Dataset& s, const Vec& x,
                                        Vec& out);

// Canonical adversarial pair shared by the three lower-bound constructions:
// S = (1, 0, ..., 0) and S' = (0, ..., 0), replacing index 1.
NeighborPair make_lower_bound_pair(std::size_t n);

// Random pair for generic stability sweeps: family-valid random tags, a
// random replaced index and an independently drawn replacement (which may
// coincide with the original entry).
NeighborPair make_random_pair(LossFamily family, std::size_t n,
                              RngStream& rng);

}  // namespace uaslab

#endif  // UASLAB_LOSSES_HPP_
