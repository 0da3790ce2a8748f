// Copyright 2026 The camp-opt Authors
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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "campopt/dynamics.hpp"
#include "campopt/oracle.hpp"
#include "campopt/rng.hpp"
#include "campopt/strategies_adversary.hpp"
#include "campopt/testing.hpp"

namespace campopt {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Network no_edge_network(const std::vector<NodeWeights>& extra, const Eigen::VectorXd& bias) {
  return build_network(static_cast<int>(extra.size()), {}, extra, bias);
}

TEST_CASE("uncapped response: closed form on one node") {
  // Influence scores are 1, so the good camp adds 0.6 and each unit of bad
  // spend removes 0.4: cancelling takes 0.6 / 0.4 = 1.5 at shadow price 2.5.
  const Network net = no_edge_network({{0.0, 0.6, 0.4}}, vec({0.0}));
  const GameOutcome out = adversary_unbounded(net, 1.0);

  CHECK(out.x.amounts == vec({1.0}));
  CHECK(out.meta.at("target") == Catch::Approx(0.6).margin(1e-12));
  CHECK(out.meta.at("bad_total") == Catch::Approx(1.5).margin(1e-12));
  CHECK(out.meta.at("dual_pi") == Catch::Approx(2.5).margin(1e-12));
  CHECK(out.y.amounts.sum() == Catch::Approx(1.5).margin(1e-12));
  CHECK(out.value == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("uncapped response cancels the sum exactly on random networks") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Network net = testing::random_network(15, seed);
    GameOutcome out;
    try {
      out = adversary_unbounded(net, 1.3);
    } catch (const AdversaryInfeasibleError&) {
      continue;  // no positively scored bad node on this draw
    }
    if (out.meta.at("target") > 0.0) {
      CHECK(out.value == Catch::Approx(0.0).margin(1e-9));
      // The spend concentrates on one node at the stated total.
      CHECK((out.y.amounts.array() > 0.0).count() <= 1);
      CHECK(out.y.amounts.sum() == Catch::Approx(out.meta.at("bad_total")).margin(1e-12));
    } else {
      CHECK(out.y.amounts.sum() == 0.0);
    }
  }
}

TEST_CASE("uncapped response stays home when the sum is already nonpositive") {
  const Network net = no_edge_network({{0.5, 0.2, 0.2}}, vec({-1.0}));
  const GameOutcome out = adversary_unbounded(net, 0.0);
  CHECK(out.y.amounts.sum() == 0.0);
  CHECK(out.meta.at("bad_total") == 0.0);
  CHECK(out.meta.at("target") == 0.0);
  CHECK(out.meta.count("dual_pi") == 0);
  CHECK(out.value < 0.0);
}

TEST_CASE("uncapped response reports infeasibility with its shortfall") {
  // Positive sum to cancel but the bad camp reaches nobody.
  const Network net = no_edge_network({{0.2, 0.6, 0.0}}, vec({1.0}));
  try {
    adversary_unbounded(net, 2.0);
    FAIL("expected infeasibility");
  } catch (const AdversaryInfeasibleError& e) {
    CHECK(e.code() == ErrorCode::AdversaryInfeasible);
    CHECK(e.shortfall() == Catch::Approx(2.0 * 0.6 + 0.2).margin(1e-12));
  }
}

TEST_CASE("capped response: greedy fill with an exact fractional top-up") {
  // Good plays (1, 1, 0) for a target of 0.65; the bad camp fills its best
  // node whole and covers the remaining 0.15 with half of the second node.
  const Network net = no_edge_network(
      {{0.1, 0.35, 0.5}, {0.0, 0.3, 0.3}, {0.0, 0.0, 0.1}}, vec({0.0, 0.0, 0.0}));
  const GameOutcome out = adversary_bounded(net, 2.0);

  CHECK(out.x.amounts == vec({1.0, 1.0, 0.0}));
  CHECK(out.meta.at("target") == Catch::Approx(0.65).margin(1e-12));
  CHECK(out.y.amounts[0] == Catch::Approx(1.0).margin(1e-12));
  CHECK(out.y.amounts[1] == Catch::Approx(0.5).margin(1e-12));
  CHECK(out.y.amounts[2] == 0.0);
  CHECK(out.meta.at("bad_total") == Catch::Approx(1.5).margin(1e-12));
  CHECK(out.meta.at("residual") >= 0.0);
  CHECK(out.meta.at("residual") <= 1e-9);
}

TEST_CASE("capped response residual is exact up to roundoff on random networks") {
  int exercised = 0;
  for (std::uint64_t seed = 11; seed <= 30; ++seed) {
    const Network net = testing::random_network(12, seed);
    GameOutcome out;
    try {
      out = adversary_bounded(net, 1.5);
    } catch (const AdversaryInfeasibleError& e) {
      CHECK(e.shortfall() > 0.0);
      continue;
    }
    if (out.meta.at("target") <= 0.0) {
      // Already nonpositive: the bad camp stays home and the sum is the
      // good side's own (negative) total.
      CHECK(out.y.amounts == Eigen::VectorXd::Zero(net.n()));
      CHECK(out.value == Catch::Approx(out.meta.at("target")).margin(1e-9));
      continue;
    }
    ++exercised;
    const double residual = out.meta.at("residual");
    CHECK(residual >= 0.0);
    CHECK(residual <= 1e-9);
    CHECK(out.y.amounts.maxCoeff() <= 1.0 + 1e-12);
    CHECK(out.y.amounts.minCoeff() >= 0.0);
    // Achieved = target + residual, so the final sum sits at -residual.
    CHECK(out.value == Catch::Approx(-residual).margin(1e-9));
    // At most one node is fractional: the greedy fills whole units.
    int fractional = 0;
    for (int i = 0; i < net.n(); ++i) {
      if (out.y.amounts[i] > 1e-12 && out.y.amounts[i] < 1.0 - 1e-12) ++fractional;
    }
    CHECK(fractional <= 1);
  }
  CHECK(exercised >= 5);
}

TEST_CASE("capped response throws when every scored node is exhausted") {
  const Network net = no_edge_network({{0.2, 0.7, 0.05}}, vec({0.0}));
  try {
    adversary_bounded(net, 1.0);
    FAIL("expected infeasibility");
  } catch (const AdversaryInfeasibleError& e) {
    CHECK(e.shortfall() == Catch::Approx(0.7 - 0.05).margin(1e-12));
  }
}

TEST_CASE("deviation optimum: closed form on one node") {
  // Negative score pulls the plan from 1 toward 0; radius sqrt(0.25) allows
  // exactly half the distance.
  const Network net = no_edge_network({{0.1, -0.5, 0.2}}, vec({0.0}));
  const DesiredInvestment desired{vec({1.0}), vec({0.0})};
  const Allocation a = deviation_strategy(net, desired, 0.25);
  CHECK(a.amounts[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(a.budget == 0.25);
}

TEST_CASE("deviation optimum validates its inputs") {
  const Network net = no_edge_network({{0.1, 0.3, 0.2}}, vec({0.0}));
  const DesiredInvestment desired{vec({1.0}), vec({0.0})};
  CHECK_THROWS_AS(deviation_strategy(net, desired, 0.0), Error);
  CHECK_THROWS_AS(deviation_strategy(net, desired, -1.0), Error);
  CHECK_THROWS_AS(deviation_strategy(net, DesiredInvestment{vec({-0.5}), vec({0.0})}, 1.0),
                  Error);
  CHECK_THROWS_AS(deviation_strategy(net, DesiredInvestment{vec({1.0, 2.0}), vec({0.0})}, 1.0),
                  Error);
}

TEST_CASE("deviation optimum beats every grid point inside the ball") {
  Rng rng(77);
  for (std::uint64_t seed = 41; seed <= 44; ++seed) {
    const Network net = testing::random_network(3, seed);
    const Eigen::VectorXd sg = good_scores(net);
    Eigen::VectorXd xbar(3);
    for (int i = 0; i < 3; ++i) xbar[i] = rng.uniform(0.0, 1.0);
    const double k = 0.3;
    const DesiredInvestment desired{xbar, Eigen::VectorXd::Zero(3)};

    const Allocation a = deviation_strategy(net, desired, k);
    CHECK((a.amounts - xbar).squaredNorm() <= k + 1e-9);
    CHECK(a.amounts.minCoeff() >= 0.0);

    const double cap = xbar.maxCoeff() + std::sqrt(k);
    const GridSearchResult grid = grid_search_allocation(
        3, 3.0 * cap, cap, 0.02, [&](const Eigen::VectorXd& x) {
          return (x - xbar).squaredNorm() <= k
                     ? sg.dot(x)
                     : -std::numeric_limits<double>::infinity();
        });
    CHECK(sg.dot(a.amounts) >= grid.value - 1e-9);
  }
}

TEST_CASE("deviation game pairs the optimum with the least-deviation response") {
  const Network net = testing::random_network(6, 51);
  const Eigen::VectorXd sb = bad_scores(net);
  DesiredInvestment desired{Eigen::VectorXd::Constant(6, 0.5),
                            Eigen::VectorXd::Constant(6, 0.1)};

  const GameOutcome out = deviation_game(net, desired, 0.4);
  CHECK(out.meta.at("good_deviation_sq") <= 0.4 + 1e-9);
  CHECK(out.meta.at("good_deviation_sq") ==
        Catch::Approx((out.x.amounts - desired.x_bar).squaredNorm()).margin(1e-12));

  const double needed = opinion_sum(net, out.x.amounts, Eigen::VectorXd::Zero(6));
  if (out.meta.count("bad_deviation_sq") == 1) {
    CHECK(out.y.amounts.minCoeff() >= 0.0);
    if (needed > 0.0) {
      // The response lands on the half-space boundary (tiny overshoot from
      // the bisection is fine) and the final sum sits at or just below zero.
      CHECK(sb.dot(out.y.amounts) >= needed - 1e-9);
      CHECK(out.value <= 1e-9);
      CHECK(out.value >= -1e-6 * (1.0 + std::abs(needed)));
    } else {
      CHECK(out.y.amounts == desired.y_bar);
      CHECK(out.meta.at("bad_deviation_sq") == 0.0);
    }
  }
}

TEST_CASE("deviation game reports an unreachable half-space honestly") {
  // Bad camp has zero susceptibility everywhere: no y cancels a positive sum.
  const Network net = no_edge_network({{0.2, 0.5, 0.0}, {0.1, 0.4, 0.0}},
                                      vec({0.5, 0.0}));
  const DesiredInvestment desired{vec({0.2, 0.2}), vec({0.3, 0.3})};
  const GameOutcome out = deviation_game(net, desired, 0.5);

  CHECK(out.meta.count("bad_deviation_sq") == 0);
  CHECK(out.y.amounts.sum() == 0.0);
  CHECK(out.value > 0.0);
}

}  // namespace
}  // namespace campopt
