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

#include <doctest.h>

#include <cmath>

#include "uaslab/losses.hpp"
#include "uaslab/rng.hpp"

using namespace uaslab;

namespace {

Vec basis(std::size_t d, std::size_t i, double v = 1.0) {
  Vec e(d, 0.0);
  e[i] = v;
  return e;
}

}  // namespace

TEST_CASE("adversarial-max values: flat branch at the origin, linear branch arithmetic") {
  const LossOracle oracle = LossOracle::adversarial_max(2, 0.01, 2.0);
  const Vec origin = zeros(4);
  CHECK(oracle.value(origin, DataPoint{0.0}) == 0.0);
  Vec x = zeros(4);
  x[0] = 1.0;
  x[1] = 1.0;
  CHECK(oracle.value(x, DataPoint{1.0}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(oracle.value(x, DataPoint{2.0}), std::invalid_argument);
  CHECK_THROWS_AS(oracle.value(Vec{0.0}, DataPoint{0.0}), std::invalid_argument);
}

TEST_CASE("hinge value and kink subgradient") {
  const LossOracle oracle = LossOracle::hinge();
  CHECK(oracle.value(Vec{0.3, 0.0}, DataPoint{1.0}) == doctest::Approx(0.7));
  // At the kink 1 - z*x_1 = 0 the flat branch (index 0) wins the tie.
  CHECK(oracle.subgradient(Vec{1.0, 0.0}, DataPoint{1.0}) == zeros(2));
  CHECK(oracle.subgradient(Vec{-1.0, 0.0}, DataPoint{-1.0}) == zeros(2));
  // Strictly active hinge pushes along -z e_1.
  CHECK(oracle.subgradient(Vec{0.0, 0.0}, DataPoint{1.0}) == basis(2, 0, -1.0));
  CHECK_THROWS_AS(oracle.value(Vec{0.0}, DataPoint{0.5}), std::invalid_argument);
}

TEST_CASE("absolute deviation picks the positive branch at the kink") {
  const LossOracle oracle = LossOracle::absolute_deviation();
  CHECK(oracle.value(Vec{0.25}, DataPoint{1.0}) == doctest::Approx(0.75));
  CHECK(oracle.subgradient(Vec{0.5}, DataPoint{0.5}) == basis(1, 0, 1.0));
  CHECK(oracle.subgradient(Vec{0.0}, DataPoint{1.0}) == basis(1, 0, -1.0));
  CHECK(oracle.subgradient(Vec{2.0}, DataPoint{1.0}) == basis(1, 0, 1.0));
}

TEST_CASE("adversarial-max subgradients follow the lowest-index tie rule") {
  const std::size_t D = 3;
  const LossOracle oracle = LossOracle::adversarial_max(D, 0.01, 10.0);
  // Origin: the flat branch is strictly maximal.
  CHECK(oracle.subgradient(zeros(5), DataPoint{0.0}) == zeros(5));
  // All D branches tied above zero: lowest index wins, e_1.
  Vec tied(5, 0.0);
  tied[0] = tied[1] = tied[2] = 0.5;
  CHECK(oracle.subgradient(tied, DataPoint{0.0}) == basis(5, 0, 1.0));
  // Exact ties resolve with zero tolerance: a strictly larger later branch wins.
  Vec later = tied;
  later[2] = 0.5 + 1e-15;
  CHECK(oracle.subgradient(later, DataPoint{0.0}) == basis(5, 2, 1.0));
  // Drift branch: r/kappa regardless of x.
  const Vec g = oracle.subgradient(tied, DataPoint{1.0});
  for (std::size_t i = 0; i < D; ++i) CHECK(g[i] == doctest::Approx(-0.1));
  CHECK(g[3] == 0.0);
  CHECK(norm(g) <= oracle.lipschitz() + 1e-12);
}

TEST_CASE("empirical risk: singleton mean and zero at the origin") {
  const LossOracle oracle = LossOracle::adversarial_max(2, 0.01, 2.0);
  const Dataset single{DataPoint{1.0}};
  Vec x = zeros(3);
  x[0] = 0.5;
  CHECK(empirical_risk(oracle, single, x) ==
        doctest::Approx(oracle.value(x, DataPoint{1.0})));
  const Dataset all_zero(4, DataPoint{0.0});
  CHECK(empirical_risk(oracle, all_zero, zeros(3)) == 0.0);
  CHECK_THROWS_AS(empirical_risk(oracle, Dataset{}, x), std::invalid_argument);
}

TEST_CASE("empirical risk of the canonical pair matches its closed form") {
  const std::size_t n = 10;
  const std::size_t D = 4;
  const double nu = 1e-3;
  const double kappa = 50.0;
  const LossOracle oracle = LossOracle::adversarial_max(D, nu, kappa);
  const NeighborPair pair = make_lower_bound_pair(n);

  RngStream rng(3, 0);
  for (int c = 0; c < 50; ++c) {
    Vec x(6);
    for (double& v : x) v = 2.0 * rng.uniform01() - 1.0;
    double drift = 0.0;
    for (std::size_t i = 0; i < D; ++i) drift -= x[i];
    double max_part = 0.0;
    for (std::size_t i = 0; i < D; ++i) max_part = std::max(max_part, x[i] - nu);
    const double expected =
        drift / (static_cast<double>(n) * kappa) +
        (static_cast<double>(n - 1) / static_cast<double>(n)) * max_part;
    CHECK(empirical_risk(oracle, pair.base(), x) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("empirical subgradient: identical points, drift-only origin, mean norm") {
  const LossOracle hinge = LossOracle::hinge();
  const Dataset same(5, DataPoint{1.0});
  Vec x{0.2, 0.0};
  CHECK(empirical_risk_subgradient(hinge, same, x) ==
        hinge.subgradient(x, DataPoint{1.0}));

  // Canonical instance at the origin: only the drift point contributes, so
  // the mean subgradient is r/(n kappa).
  const std::size_t n = 10;
  const std::size_t D = 3;
  const double kappa = 30.0;
  const LossOracle adv = LossOracle::adversarial_max(D, 1e-3, kappa);
  const NeighborPair pair = make_lower_bound_pair(n);
  const Vec g = empirical_risk_subgradient(adv, pair.base(), zeros(4));
  for (std::size_t i = 0; i < D; ++i) {
    CHECK(g[i] == doctest::Approx(-1.0 / (static_cast<double>(n) * kappa)).epsilon(1e-12));
  }
  CHECK(g[3] == 0.0);
}

TEST_CASE("finite differences certify the directional derivative against the subgradient") {
  RngStream rng(11, 0);
  const double h = 1e-7;
  for (int c = 0; c < 100; ++c) {
    const std::size_t d = 2 + rng.uniform_index(4);
    const LossOracle oracle = c % 2 == 0
                                  ? LossOracle::hinge()
                                  : LossOracle::absolute_deviation();
    const DataPoint z{c % 2 == 0 ? (rng.uniform_index(2) == 0 ? -1.0 : 1.0)
                                 : 2.0 * rng.uniform01() - 1.0};
    Vec x(d);
    for (double& v : x) v = 2.0 * rng.uniform01() - 1.0;
    Vec u(d);
    for (double& v : u) v = 2.0 * rng.uniform01() - 1.0;
    const double un = norm(u);
    if (un == 0.0) continue;
    scale(u, 1.0 / un);
    const Vec g = oracle.subgradient(x, z);
    Vec xh = x;
    axpy(h, u, xh);
    const double directional = (oracle.value(xh, z) - oracle.value(x, z)) / h;
    CHECK(directional >= dot(g, u) - 1e-6);
  }
}

TEST_CASE("canonical pair layout and random pair determinism") {
  const NeighborPair pair = make_lower_bound_pair(10);
  CHECK(pair.base().size() == 10);
  CHECK(pair.base()[0].tag == 1.0);
  for (std::size_t i = 1; i < 10; ++i) CHECK(pair.base()[i].tag == 0.0);
  CHECK(pair.replaced_index() == 1);
  const Dataset sprime = pair.neighbor();
  for (const DataPoint& z : sprime) CHECK(z.tag == 0.0);
  CHECK_FALSE(pair.degenerate());

  RngStream a(5, 0);
  RngStream b(5, 0);
  const NeighborPair pa = make_random_pair(LossFamily::hinge, 8, a);
  const NeighborPair pb = make_random_pair(LossFamily::hinge, 8, b);
  CHECK(pa.replaced_index() == pb.replaced_index());
  CHECK(pa.replacement().tag == pb.replacement().tag);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(pa.base()[i].tag == pb.base()[i].tag);
  }

  CHECK_THROWS_AS(NeighborPair(Dataset{DataPoint{0.0}}, 2, DataPoint{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(NeighborPair(Dataset{DataPoint{0.0}}, 0, DataPoint{1.0}),
                  std::invalid_argument);
}
