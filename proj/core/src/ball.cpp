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

#include "uaslab/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace uaslab {

bool Ball::contains(const Vec& x, double rel_tol) const {
  if (x.size() != center.size()) return false;
  return distance(x, center) <= radius * (1.0 + rel_tol);
}

Ball make_origin_ball(std::size_t d, double radius) {
  Ball ball{zeros(d), radius};
  validate(ball);
  return ball;
}

void validate(const Ball& ball) {
  if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) {
    throw std::invalid_argument("Ball radius must be strictly positive and finite");
  }
  if (!all_finite(ball.center)) {
    throw std::invalid_argument("Ball center must be finite");
  }
}

Vec project(const Ball& ball, const Vec& x) {
  Vec result = x;
  project_inplace(ball, result);
  return result;
}

void project_inplace(const Ball& ball, Vec& x) {
  validate(ball);
  if (x.size() != ball.center.size()) {
    throw std::invalid_argument("project: point dimension does not match the ball");
  }
  if (!all_finite(x)) {
    throw std::invalid_argument("project: point has non-finite entries");
  }
  const double dist = distance(x, ball.center);
  if (dist <= ball.radius) return;
  const double ratio = ball.radius / dist;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = ball.center[i] + ratio * (x[i] - ball.center[i]);
  }
}

}  // namespace uaslab
