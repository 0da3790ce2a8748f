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
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "campopt/dynamics.hpp"
#include "campopt/robust.hpp"
#include "campopt/rng.hpp"
#include "campopt/strategies_basic.hpp"
#include "campopt/testing.hpp"

namespace campopt {
namespace {

UncertaintyPolytope own_weights_polytope(const Network& net, double eps_l, double eps_o) {
  return build_box_sum_polytope(net.good_weight(), net.bad_weight(), eps_l, eps_o);
}

double min_certified_inner(const RobustOutcome& out) {
  double m = std::numeric_limits<double>::infinity();
  for (const RobustBlockDuals& d : out.duals) m = std::min(m, d.inner_value);
  return m;
}

TEST_CASE("box+sum polytope rows and validation") {
  Eigen::VectorXd hat_wg(2), hat_wb(2);
  hat_wg << 0.2, 0.3;
  hat_wb << 0.1, 0.4;
  const UncertaintyPolytope poly = build_box_sum_polytope(hat_wg, hat_wb, 0.5, 0.25);

  REQUIRE(poly.E.rows() == 4 * 2 + 4);
  REQUIRE(poly.E.cols() == 3 * 2);
  REQUIRE(poly.box_sum.has_value());
  CHECK(poly.box_sum->eps_l == 0.5);
  CHECK(poly.box_sum->eps_o == 0.25);

  // Node 0 box rows: wg in [0.1, 0.3], wb in [0.05, 0.15].
  CHECK(poly.f[0] == Catch::Approx(0.3));
  CHECK(poly.f[1] == Catch::Approx(-0.1));
  CHECK(poly.f[2] == Catch::Approx(0.15));
  CHECK(poly.f[3] == Catch::Approx(-0.05));
  // Sum rows: good total in [0.375, 0.625], bad total in [0.375, 0.625].
  CHECK(poly.f[8] == Catch::Approx(0.625));
  CHECK(poly.f[9] == Catch::Approx(-0.375));
  CHECK(poly.f[10] == Catch::Approx(0.625));
  CHECK(poly.f[11] == Catch::Approx(-0.375));

  CHECK_THROWS_AS(build_box_sum_polytope(hat_wg, Eigen::VectorXd::Zero(3), 0.1, 0.1), Error);
  CHECK_THROWS_AS(build_box_sum_polytope(hat_wg, hat_wb, -0.1, 0.1), Error);
  CHECK_THROWS_AS(build_box_sum_polytope(-hat_wg, hat_wb, 0.1, 0.1), Error);
}

TEST_CASE("membership test accepts the hat point and rejects box violations") {
  const Network net = testing::random_network(5, 3);
  const UncertaintyPolytope poly = own_weights_polytope(net, 0.2, 0.1);

  CHECK(polytope_contains(poly, net.self_weight(), net.good_weight(), net.bad_weight()));
  CHECK_FALSE(polytope_contains(poly, net.self_weight(),
                                (net.good_weight().array() * 1.5).matrix(),
                                net.bad_weight()));

  // One coordinate nudged past its per-node box is rejected.
  Eigen::VectorXd wb = net.bad_weight();
  wb[2] *= 1.25;  // box allows 1.2x
  CHECK_FALSE(polytope_contains(poly, net.self_weight(), net.good_weight(), wb));

  // A uniform 15% scale stays inside every 20% box but breaks the 10% sum
  // window, so the sum rows alone must reject it.
  CHECK_FALSE(polytope_contains(poly, net.self_weight(),
                                (net.good_weight().array() * 1.15).matrix(),
                                net.bad_weight()));
}

TEST_CASE("zero uncertainty reproduces the certain-world game value") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Network net = testing::random_network(6, seed);
    const Budgets budgets{2.0, 1.0};
    const RobustOutcome out =
        robust_good_strategy(net, own_weights_polytope(net, 0.0, 0.0), budgets);
    const GameOutcome fund = fundamental_game(net, budgets, /*bounded=*/false);
    CHECK(out.worst_case_value == Catch::Approx(fund.meta.at("maxmin")).margin(1e-8));
    CHECK(out.x.amounts.sum() <= budgets.k_g + 1e-9);
    CHECK(out.x.amounts.minCoeff() >= -1e-12);
  }
}

TEST_CASE("all solve paths agree on the guaranteed value") {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const Network net = testing::random_network(5, seed);
    const Budgets budgets{1.5, 1.0};
    const UncertaintyPolytope structured = own_weights_polytope(net, 0.3, 0.1);

    const RobustOutcome mono =
        robust_good_strategy(net, structured, budgets, RobustMethod::Monolith);
    const RobustOutcome cuts =
        robust_good_strategy(net, structured, budgets, RobustMethod::CutGeneration);

    // Strip the structured tag: same rows, so the same answer must come back
    // through the generic inner solver. Pin rows are appended by the solver
    // only for structured polytopes, so add them here by hand.
    UncertaintyPolytope raw;
    const int n = net.n();
    raw.E = Eigen::MatrixXd::Zero(structured.E.rows() + 2 * n, 3 * n);
    raw.f = Eigen::VectorXd::Zero(structured.f.size() + 2 * n);
    raw.E.topRows(structured.E.rows()) = structured.E;
    raw.f.head(structured.f.size()) = structured.f;
    for (int i = 0; i < n; ++i) {
      const int row = static_cast<int>(structured.E.rows()) + 2 * i;
      raw.E(row, 3 * i) = 1.0;
      raw.f[row] = net.self_weight()[i];
      raw.E(row + 1, 3 * i) = -1.0;
      raw.f[row + 1] = -net.self_weight()[i];
    }
    const RobustOutcome generic =
        robust_good_strategy(net, raw, budgets, RobustMethod::CutGeneration);

    CHECK(mono.method_used == RobustMethod::Monolith);
    CHECK(mono.cut_rounds == 0);
    CHECK(cuts.method_used == RobustMethod::CutGeneration);
    CHECK(cuts.cut_rounds >= 1);
    CHECK(generic.cut_rounds >= 1);

    CHECK(cuts.worst_case_value == Catch::Approx(mono.worst_case_value).margin(1e-7));
    CHECK(generic.worst_case_value == Catch::Approx(mono.worst_case_value).margin(1e-7));
  }
}

TEST_CASE("auto method picks the monolith for small instances only") {
  const Network small = testing::random_network(6, 21);
  const RobustOutcome mono = robust_good_strategy(
      small, own_weights_polytope(small, 0.2, 0.1), Budgets{1.0, 1.0});
  CHECK(mono.method_used == RobustMethod::Monolith);

  const Network larger = testing::random_network(12, 22);
  const RobustOutcome cuts = robust_good_strategy(
      larger, own_weights_polytope(larger, 0.2, 0.1), Budgets{1.0, 1.0});
  CHECK(cuts.method_used == RobustMethod::CutGeneration);

  // And the two answers coincide when both are asked on the same instance.
  const RobustOutcome forced = robust_good_strategy(
      larger, own_weights_polytope(larger, 0.2, 0.1), Budgets{1.0, 1.0},
      RobustMethod::Monolith);
  CHECK(cuts.worst_case_value == Catch::Approx(forced.worst_case_value).margin(1e-7));
}

TEST_CASE("dual certificates bound every condition and are tight at the worst") {
  const Network net = testing::random_network(7, 31);
  const Budgets budgets{1.5, 1.0};
  const UncertaintyPolytope poly = own_weights_polytope(net, 0.4, 0.2);

  for (const RobustMethod method : {RobustMethod::Monolith, RobustMethod::CutGeneration}) {
    const RobustOutcome out = robust_good_strategy(net, poly, budgets, method);
    REQUIRE_FALSE(out.duals.empty());
    REQUIRE_FALSE(out.feasible_set.empty());
    CHECK(out.duals.size() == out.feasible_set.size());
    for (std::size_t i = 0; i < out.duals.size(); ++i) {
      CHECK(out.duals[i].i0 == out.feasible_set[i]);
      CHECK(out.duals[i].inner_value >= out.worst_case_value - 1e-7);
    }
    CHECK(min_certified_inner(out) == Catch::Approx(out.worst_case_value).margin(1e-7));
    // The dummy condition, when feasible, sits at the end of the list.
    for (std::size_t i = 0; i + 1 < out.feasible_set.size(); ++i) {
      CHECK(out.feasible_set[i] >= 0);
    }
  }
}

TEST_CASE("sampled ground truths never beat the guarantee") {
  const Network net = testing::random_network(9, 41);
  const Budgets budgets{2.0, 1.0};
  const UncertaintyPolytope poly = own_weights_polytope(net, 0.3, 0.15);
  const RobustOutcome out = robust_good_strategy(net, poly, budgets);

  Rng rng(2025);
  for (int draw = 0; draw < 40; ++draw) {
    const auto [wg, wb] = sample_box_sum(poly, rng);
    REQUIRE(polytope_contains(poly, net.self_weight(), wg, wb));
    const Network truth = replace_camp_weights(net, wg, wb);
    CHECK(realized_value(out.x, truth, budgets.k_b) >= out.worst_case_value - 1e-7);
  }
}

TEST_CASE("widening the uncertainty never raises the guarantee") {
  const Network net = testing::random_network(8, 51);
  const Budgets budgets{1.5, 1.0};
  double prev = std::numeric_limits<double>::infinity();
  for (const double eps_l : {0.0, 0.25, 0.5}) {
    const RobustOutcome out =
        robust_good_strategy(net, own_weights_polytope(net, eps_l, 0.1), budgets);
    CHECK(out.worst_case_value <= prev + 1e-9);
    prev = out.worst_case_value;
  }
}

TEST_CASE("replaced camp weights keep the skeleton intact") {
  const Network net = testing::random_network(6, 61);
  const Eigen::VectorXd wg = (net.good_weight().array() * 1.3).matrix();
  const Eigen::VectorXd wb = (net.bad_weight().array() * 0.7).matrix();
  const Network truth = replace_camp_weights(net, wg, wb);

  CHECK((Eigen::MatrixXd(truth.w()) - Eigen::MatrixXd(net.w())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(truth.self_weight() == net.self_weight());
  CHECK(truth.bias() == net.bias());
  CHECK(truth.good_weight() == wg);
  CHECK(truth.bad_weight() == wb);
  CHECK_THROWS_AS(replace_camp_weights(net, Eigen::VectorXd::Zero(3), wb), Error);
}

TEST_CASE("an empty uncertainty set is reported as model infeasibility") {
  const Network net = testing::random_network(3, 71);
  UncertaintyPolytope poly;
  poly.E = Eigen::MatrixXd::Zero(1, 9);
  poly.E(0, 1) = 1.0;       // w_0g <= -1 contradicts u >= 0
  poly.f = Eigen::VectorXd::Constant(1, -1.0);
  try {
    robust_good_strategy(net, poly, Budgets{1.0, 1.0});
    FAIL("expected an infeasible-model error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleModel);
  }
}

TEST_CASE("dimension checks on the robust entry point") {
  const Network net = testing::random_network(4, 81);
  const UncertaintyPolytope poly = own_weights_polytope(net, 0.1, 0.1);
  CHECK_THROWS_AS(
      robust_good_strategy(net, poly, Budgets{1.0, 1.0}, Eigen::VectorXd::Zero(3),
                           net.self_weight()),
      Error);
  const Network other = testing::random_network(5, 82);
  CHECK_THROWS_AS(robust_good_strategy(other, poly, Budgets{1.0, 1.0}), Error);
}

}  // namespace
}  // namespace campopt
