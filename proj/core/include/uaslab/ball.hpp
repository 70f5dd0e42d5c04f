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

#ifndef UASLAB_BALL_HPP_
#define UASLAB_BALL_HPP_

#include <cstddef>

#include "uaslab/vec.hpp"

namespace uaslab {

// Euclidean ball feasible set. The closed-form projection keeps every
// optimizer free of any QP machinery; radius must be strictly positive
// and finite.
struct Ball {
  Vec center;
  double radius = 1.0;

  std::size_t dim() const { return center.size(); }
  bool contains(const Vec& x, double rel_tol = 1e-9) const;
};

Ball make_origin_ball(std::size_t d, double radius);

// Throws std::invalid_argument on a malformed ball.
void validate(const Ball& ball);

// Euclidean projection onto the ball: identity inside, radial rescale
// outside. Nonexpansive and idempotent. Rejects non-finite input.
Vec project(const Ball& ball, const Vec& x);
void project_inplace(const Ball& ball, Vec& x);

}  // namespace uaslab

#endif  // UASLAB_BALL_HPP_
