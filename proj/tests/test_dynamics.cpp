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

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <catch2/catch_amalgamated.hpp>

#include "campopt/dynamics.hpp"
#include "campopt/network.hpp"
#include "campopt/oracle.hpp"
#include "campopt/rng.hpp"
#include "campopt/testing.hpp"

namespace campopt {
namespace {

Eigen::VectorXd random_allocation(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform01();
  return v;
}

TEST_CASE("influence scores solve the adjoint system") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Network net = testing::random_network(25, seed);
    const InfluenceVector inf = influence_vector(net);

    REQUIRE(inf.r.size() == net.n());
    CHECK(inf.residual_norm <= 1e-10 * (1.0 + inf.r.cwiseAbs().maxCoeff()));

    const Eigen::MatrixXd dense = Eigen::MatrixXd(net.w());
    const Eigen::VectorXd direct =
        (Eigen::MatrixXd::Identity(net.n(), net.n()) - dense.transpose())
            .partialPivLu()
            .solve(Eigen::VectorXd::Ones(net.n()));
    CHECK((inf.r - direct).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("influence scores are at least one on nonnegative networks") {
  for (std::uint64_t seed = 11; seed <= 14; ++seed) {
    const Network net = testing::random_network(40, seed);
    REQUIRE(net.nonnegative_weights());
    const Eigen::VectorXd r = influence_vector(net).r;
    CHECK(r.minCoeff() >= 1.0 - 1e-12);
  }
}

TEST_CASE("steady state is the fixed point of the update map") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    const Network net = testing::random_network(30, seed);
    const Eigen::VectorXd x = random_allocation(net.n(), seed * 31);
    const Eigen::VectorXd y = random_allocation(net.n(), seed * 31 + 1);

    const Eigen::VectorXd v = steady_state(net, x, y);
    const Eigen::VectorXd forcing = forcing_term(net, x, y);
    const Eigen::VectorXd image = net.w() * v + forcing;
    CHECK((image - v).cwiseAbs().maxCoeff() < 1e-9);

    // Iterating far enough lands on the same point.
    const Trajectory traj = iterate_dynamics(net, x, y, 0.0, 300);
    CHECK((traj.states.back() - v).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("trajectory bookkeeping") {
  const Network net = testing::random_network(12, 3);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(net.n());
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(net.n());

  const Trajectory traj = iterate_dynamics(net, x, y, 1e-8, 500);
  REQUIRE(traj.converged);
  CHECK(traj.states.size() == static_cast<std::size_t>(traj.steps) + 1);
  CHECK(traj.states.front() == net.bias());

  // The final two recorded states differ by at most the tolerance.
  const auto& last = traj.states[traj.states.size() - 1];
  const auto& prev = traj.states[traj.states.size() - 2];
  CHECK((last - prev).cwiseAbs().maxCoeff() <= 1e-8);

  CHECK_THROWS_AS(iterate_dynamics(net, x, y, 1e-8, -1), Error);
  CHECK_THROWS_AS(iterate_dynamics(net, Eigen::VectorXd::Zero(3), y), Error);
}

TEST_CASE("trajectory matches the scalar-loop reference at fixed horizons") {
  for (std::uint64_t seed = 31; seed <= 34; ++seed) {
    const Network net = testing::random_network(10, seed);
    const Eigen::VectorXd x = random_allocation(net.n(), seed + 100);
    const Eigen::VectorXd y = random_allocation(net.n(), seed + 200);

    const Trajectory traj = iterate_dynamics(net, x, y, 0.0, 50);
    for (const int tau : {0, 1, 7, 50}) {
      const Eigen::VectorXd ref = finite_horizon_opinion(net, x, y, tau);
      // At tolerance zero the iteration only stops on an exact fixed point,
      // after which every later reference iterate is bitwise unchanged.
      const std::size_t idx =
          std::min<std::size_t>(static_cast<std::size_t>(tau), traj.states.size() - 1);
      CHECK((traj.states[idx] - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("opinion sum agrees with summing the steady state") {
  for (std::uint64_t seed = 41; seed <= 46; ++seed) {
    const Network net = testing::random_network(35, seed);
    const Eigen::VectorXd x = random_allocation(net.n(), seed + 300);
    const Eigen::VectorXd y = random_allocation(net.n(), seed + 400);

    const double direct = steady_state(net, x, y).sum();
    CHECK(opinion_sum(net, x, y) == Catch::Approx(direct).margin(1e-9));
  }
}

TEST_CASE("opinion sum decomposes into bias plus camp terms") {
  const Network net = testing::random_network(20, 51);
  const Eigen::VectorXd x = random_allocation(net.n(), 52);
  const Eigen::VectorXd y = random_allocation(net.n(), 53);

  const Eigen::VectorXd sg = good_scores(net);
  const Eigen::VectorXd sb = bad_scores(net);
  const double expected = bias_contribution(net) + sg.dot(x) - sb.dot(y);
  CHECK(opinion_sum(net, x, y) == Catch::Approx(expected).margin(1e-10));

  const Eigen::VectorXd r = influence_vector(net).r;
  CHECK((sg - r.cwiseProduct(net.good_weight())).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sb - r.cwiseProduct(net.bad_weight())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(bias_contribution(net) ==
        Catch::Approx(r.dot(net.self_weight().cwiseProduct(net.bias()))).margin(1e-12));
}

TEST_CASE("influence cache is shared across copies") {
  const Network net = testing::random_network(15, 61);
  const Network copy = net;
  const Eigen::VectorXd r1 = influence_vector(net).r;
  const Eigen::VectorXd r2 = influence_vector(copy).r;
  CHECK(r1 == r2);
  CHECK(net.influence_cache() == copy.influence_cache());
}

TEST_CASE("hand-checkable two-node equilibrium") {
  // v0 = w0*b0 + a v1, v1 = w1*b1 + c v0 with a = 0.2, c = 0.3:
  // v0 = (f0 + a f1) / (1 - ac), v1 = (f1 + c f0) / (1 - ac).
  std::vector<Edge> edges{{0, 1, 0.2}, {1, 0, 0.3}};
  std::vector<NodeWeights> extra{{0.4, 0.1, 0.1}, {0.3, 0.2, 0.1}};
  Eigen::VectorXd bias(2);
  bias << 0.5, -1.0;
  const Network net = build_network(2, edges, extra, bias);

  const double f0 = 0.4 * 0.5, f1 = 0.3 * -1.0;
  const double denom = 1.0 - 0.2 * 0.3;
  const Eigen::VectorXd v =
      steady_state(net, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2));
  CHECK(v[0] == Catch::Approx((f0 + 0.2 * f1) / denom).margin(1e-12));
  CHECK(v[1] == Catch::Approx((f1 + 0.3 * f0) / denom).margin(1e-12));

  // r solves (I - w^T) r = 1: r0 = (1 + c) / (1 - ac), r1 = (1 + a) / (1 - ac).
  const Eigen::VectorXd r = influence_vector(net).r;
  CHECK(r[0] == Catch::Approx((1.0 + 0.3) / denom).margin(1e-12));
  CHECK(r[1] == Catch::Approx((1.0 + 0.2) / denom).margin(1e-12));
}

}  // namespace
}  // namespace campopt
