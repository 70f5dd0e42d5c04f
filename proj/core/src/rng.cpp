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

#include "uaslab/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uaslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream_id ^ 0xD1B54A32D192ED03ull))) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  const std::uint64_t nn = static_cast<std::uint64_t>(n);
  if (nn == 1) return 0;
  // Rejection sampling over the largest multiple of n below 2^64.
  const std::uint64_t max_u64 = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max_u64 % nn + 1) % nn;  // 2^64 mod n
  const std::uint64_t bound = max_u64 - rem;
  std::uint64_t u = next_u64();
  while (u > bound) u = next_u64();
  return static_cast<std::size_t>(u % nn);
}

void RngStream::gaussian_pair(double& z0, double& z1) {
  // Box-Muller; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(theta);
  z1 = r * std::sin(theta);
}

double RngStream::gaussian(double sigma) {
  if (sigma < 0.0 || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian: sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return 0.0;
  double z0 = 0.0;
  double z1 = 0.0;
  gaussian_pair(z0, z1);
  return sigma * z0;
}

void RngStream::shuffle(std::vector<std::size_t>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniform_index(i);
    std::swap(items[i - 1], items[j]);
  }
}

Vec gaussian_vector(RngStream& rng, std::size_t d, double sigma) {
  Vec out(d, 0.0);
  gaussian_vector_inplace(rng, sigma, out);
  return out;
}

void gaussian_vector_inplace(RngStream& rng, double sigma, Vec& out) {
  if (sigma < 0.0 || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian_vector: sigma must be finite and >= 0");
  }
  if (sigma == 0.0) {
    set_zero(out);
    return;
  }
  const std::size_t d = out.size();
  std::size_t i = 0;
  double z0 = 0.0;
  double z1 = 0.0;
  while (i + 1 < d) {
    rng.gaussian_pair(z0, z1);
    out[i++] = sigma * z0;
    out[i++] = sigma * z1;
  }
  if (i < d) {
    rng.gaussian_pair(z0, z1);
    out[i] = sigma * z0;
  }
}

}  // namespace uaslab
