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

#ifndef UASLAB_RNG_HPP_
#define UASLAB_RNG_HPP_

#include <cstdint>
#include <random>

#include "uaslab/vec.hpp"

namespace uaslab {

// Deterministic random stream addressed by (seed, stream_id). The engine is
// std::mt19937_64 (bit-exact by the standard) and every mapping to doubles or
// index ranges is implemented here rather than via std::*_distribution, whose
// output is implementation-defined. Two streams constructed from equal
// (seed, stream_id) produce bit-identical draw sequences.
//
// A stream is single-owner mutable state: copy it to replay, never share one
// instance across concurrent runs.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  // Unbiased uniform draw from {0, ..., n-1}; n must be >= 1.
  std::size_t uniform_index(std::size_t n);

  // Zero-mean Gaussian draw with standard deviation sigma (Box-Muller;
  // consumes one uniform pair per call). sigma == 0 consumes nothing and
  // returns 0; sigma < 0 is rejected.
  double gaussian(double sigma);

  // One standard-normal Box-Muller pair.
  void gaussian_pair(double& z0, double& z1);

  // In-place Fisher-Yates shuffle.
  void shuffle(std::vector<std::size_t>& items);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Vector of d i.i.d. N(0, sigma^2) entries. sigma == 0 returns the zero
// vector without consuming any draws, so degenerate-noise runs replay the
// index stream of their noiseless counterparts exactly.
Vec gaussian_vector(RngStream& rng, std::size_t d, double sigma);
void gaussian_vector_inplace(RngStream& rng, double sigma, Vec& out);

}  // namespace uaslab

#endif  // UASLAB_RNG_HPP_
