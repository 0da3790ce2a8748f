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
#include "campopt/strategies_ccc.hpp"
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

// Two nodes, scores good (0.5, 0.4) and bad (0.45, 0.1). Whoever moves first
// changes the value: the good camp locks the strong node for 0.4; moving
// second it is pushed to the weak node while the bad camp harvests, for -0.05.
Network first_mover_instance() {
  return no_edge_network({{0.05, 0.5, 0.45}, {0.5, 0.4, 0.1}}, vec({0.0, 0.0}));
}

void check_shared_capacity(const GameOutcome& out, const Budgets& budgets) {
  const Eigen::VectorXd total = out.x.amounts + out.y.amounts;
  CHECK(total.maxCoeff() <= 1.0 + 1e-12);
  CHECK(out.x.amounts.minCoeff() >= 0.0);
  CHECK(out.y.amounts.minCoeff() >= 0.0);
  CHECK(out.x.amounts.sum() <= budgets.k_g + 1e-12);
  CHECK(out.y.amounts.sum() <= budgets.k_b + 1e-12);
}

TEST_CASE("shared capacity game: first mover advantage on the crafted pair") {
  const Network net = first_mover_instance();
  const Budgets budgets{1.0, 1.0};

  const GameOutcome lead = ccc_maxmin(net, budgets);
  CHECK(lead.x.amounts == vec({1.0, 0.0}));
  CHECK(lead.y.amounts == vec({0.0, 1.0}));
  CHECK(lead.value == Catch::Approx(0.4).margin(1e-12));

  const GameOutcome follow = ccc_minmax(net, budgets);
  CHECK(follow.x.amounts == vec({0.0, 1.0}));
  CHECK(follow.y.amounts == vec({1.0, 0.0}));
  CHECK(follow.value == Catch::Approx(-0.05).margin(1e-12));

  CHECK(lead.value > follow.value);

  // The exhaustive reference lands on the same values, exactly.
  const IntegerCccResult exact = enumerate_integer_ccc(net, budgets);
  CHECK(lead.value == exact.maxmin);
  CHECK(follow.value == exact.minmax);

  check_shared_capacity(lead, budgets);
  check_shared_capacity(follow, budgets);
}

TEST_CASE("threshold objective agrees with the reported value") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Network net = testing::random_network(7, seed);
    const Budgets budgets{2.0, 2.0};
    for (auto solve : {&ccc_maxmin, &ccc_minmax}) {
      const GameOutcome out = (*solve)(net, budgets);
      CHECK(std::abs(out.value - out.meta.at("value_decomposed")) <= 1e-9);
      CHECK(out.value ==
            Catch::Approx(opinion_sum(net, out.x.amounts, out.y.amounts)).margin(1e-12));
      check_shared_capacity(out, budgets);
    }
  }
}

TEST_CASE("integer instances match exhaustive enumeration exactly") {
  Rng rng(321);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(5));  // 2..6 nodes
    const Budgets budgets{1.0 + static_cast<double>(rng.uniform_index(static_cast<std::uint64_t>(n))),
                          1.0 + static_cast<double>(rng.uniform_index(static_cast<std::uint64_t>(n)))};
    const Network net = testing::random_network(n, 1000 + static_cast<std::uint64_t>(trial));

    const IntegerCccResult exact = enumerate_integer_ccc(net, budgets);
    const GameOutcome lead = ccc_maxmin(net, budgets);
    const GameOutcome follow = ccc_minmax(net, budgets);

    CHECK(lead.value == exact.maxmin);
    CHECK(follow.value == exact.minmax);
    CHECK(lead.value >= follow.value - 1e-12);
    check_shared_capacity(lead, budgets);
    check_shared_capacity(follow, budgets);
  }
}

TEST_CASE("no fixed leader allocation on a grid beats the computed optimum") {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const Network net = testing::random_network(3, seed);
    const Budgets budgets{1.5, 1.0};
    const Eigen::VectorXd sg = good_scores(net);

    // Any leader play the grid proposes gets its exact follower reply; none
    // may beat the computed leader optimum.
    const GameOutcome lead = ccc_maxmin(net, budgets);
    const GridSearchResult best_grid = grid_search_allocation(
        3, budgets.k_g, 1.0, 0.1, [&](const Eigen::VectorXd& x) {
          const Allocation reply =
              bad_best_response(net, Allocation{x, budgets.k_g, 1.0}, budgets.k_b);
          return opinion_sum(net, x, reply.amounts);
        });
    CHECK(best_grid.value <= lead.value + 1e-9);

    // Mirror image for the bad camp: the grid maximizes, so feed it -value.
    const GameOutcome follow = ccc_minmax(net, budgets);
    const GridSearchResult worst_grid = grid_search_allocation(
        3, budgets.k_b, 1.0, 0.1, [&](const Eigen::VectorXd& y) {
          const Eigen::VectorXd caps = (1.0 - y.array()).max(0.0).matrix();
          const Eigen::VectorXd reply = detail::greedy_fill(sg, caps, budgets.k_g);
          return -opinion_sum(net, reply, y);
        });
    CHECK(-worst_grid.value >= follow.value - 1e-9);
  }
}

TEST_CASE("candidate boundaries: descending thresholds, ties grouped, dummy last") {
  // Bad scores 0.4, 0.4, 0.2, 0 and a negative: two real thresholds plus the
  // zero-threshold fallback.
  const Network net = no_edge_network({{0.1, 0.2, 0.4},
                                       {0.1, 0.3, 0.4},
                                       {0.1, 0.1, 0.2},
                                       {0.2, 0.3, 0.0},
                                       {0.3, 0.2, -0.1}},
                                      vec({0.0, 0.0, 0.0, 0.0, 0.0}));
  const std::vector<BoundaryCandidate> cands = candidate_boundaries(net, Budgets{2.0, 2.0});

  REQUIRE(cands.size() == 3);
  CHECK(cands[0].threshold == 0.4);
  CHECK(cands[0].i_set.empty());
  CHECK(cands[0].p_set == std::vector<int>{0, 1});
  CHECK(cands[1].threshold == 0.2);
  CHECK(cands[1].i_set == std::vector<int>{0, 1});
  CHECK(cands[1].p_set == std::vector<int>{2});
  CHECK(cands[2].j_hat == -1);
  CHECK(cands[2].threshold == 0.0);
  CHECK(cands[2].i_set == std::vector<int>{0, 1, 2});
  CHECK(cands[2].p_set == std::vector<int>{3});  // zero-score node

  CHECK_THROWS_AS(candidate_boundaries(net, Budgets{-1.0, 1.0}), Error);
}

TEST_CASE("follower response respects spare capacity") {
  const Network net = testing::random_network(9, 21);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(9);
  x[0] = 1.0;
  x[3] = 0.6;
  const Allocation y = bad_best_response(net, Allocation{x, 1.6, 1.0}, 2.0);

  CHECK(y.amounts[0] == 0.0);
  CHECK(y.amounts[3] <= 0.4 + 1e-12);
  CHECK((x + y.amounts).maxCoeff() <= 1.0 + 1e-12);
  CHECK(y.amounts.sum() <= 2.0 + 1e-12);

  CHECK_THROWS_AS(bad_best_response(net, Allocation{Eigen::VectorXd::Zero(3), 1.0, 1.0}, 1.0),
                  Error);
}

}  // namespace
}  // namespace campopt
