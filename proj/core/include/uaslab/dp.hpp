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

#ifndef UASLAB_DP_HPP_
#define UASLAB_DP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uaslab/risk.hpp"

namespace uaslab {

// (alpha, beta) privacy parameters with alpha in (0, 1] and beta in (0, 1).
// The sample-size condition beta < 1/n is checked where n is known.
struct PrivacyParams {
  double alpha = 1.0;
  double beta = 0.01;
};

void validate(const PrivacyParams& p);
void validate_for_sample(const PrivacyParams& p, std::size_t n);

// Default beta = 1/n^2, a concrete rule satisfying beta << 1/n.
double default_beta(std::size_t n);

// sigma = sqrt(8 L^2 log(1/beta)) / alpha, the noisy-SGD calibration.
double calibrate_sigma(double L, const PrivacyParams& p);

// eta = R / (L n max(sqrt(n), sqrt(d log(1/beta)) / alpha)).
double tuned_eta(double R, double L, std::size_t n, std::size_t d,
                 const PrivacyParams& p);

// R L max(1/sqrt(n), sqrt(d log(1/beta)) / (alpha n)): the reference
// excess-risk envelope (constants and log factors not reproduced).
double dp_risk_envelope(double R, double L, std::size_t n, std::size_t d,
                        const PrivacyParams& p);

struct DpExperimentSpec {
  SyntheticDistribution dist = SyntheticDistribution::absolute_deviation(0.75);
  std::size_t n = 16;
  std::size_t d = 5;
  double R = 1.0;
  PrivacyParams privacy;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<double> sigma_override;  // forcing 0 recovers plain rSGD
  std::optional<double> eta_override;
  std::size_t jobs = 1;
};

struct DpRiskReport {
  double sigma = 0.0;
  double eta = 0.0;
  double envelope = 0.0;
  std::size_t T = 0;  // n^2
  double mean_excess_risk = 0.0;
  std::vector<double> per_trial_excess;
  std::vector<std::string> violations;
};

// Wires calibrate_sigma and tuned_eta into noisy SGD with T = n^2 and
// measures excess population risk per trial against the known minimizer.
DpRiskReport run_private_sco(const DpExperimentSpec& spec);

}  // namespace uaslab

#endif  // UASLAB_DP_HPP_
