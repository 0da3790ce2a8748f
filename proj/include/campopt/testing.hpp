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

#ifndef CAMPOPT_TESTING_HPP_
#define CAMPOPT_TESTING_HPP_

// Seeded random instances for self-checks and the test suite. Everything here
// is deterministic in the seed: nodes draw in ascending order with a fixed
// number of variates per decision, so results are stable across platforms.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "campopt/network.hpp"
#include "campopt/rng.hpp"

namespace campopt::testing {

struct RandomNetworkOptions {
  double edge_prob = 0.3;      // chance of each ordered pair becoming an edge
  double budget_lo = 0.55;     // row weight budget drawn uniformly in
  double budget_hi = 0.95;     //   [budget_lo, budget_hi] (strictly below 1)
  double tuple_lo = 0.25;      // share of the budget spent on (w0, wg, wb)
  double tuple_hi = 0.75;
  bool negative_edges = false; // flip a third of the edge weights negative
  bool zero_bias = false;      // bias uniform in [-1, 1] unless zeroed
};

// Dense-ish random network with every row comfortably inside the weight
// budget: per node, a budget in [budget_lo, budget_hi] splits between the
// anchor/camp tuple and the out-edges. Nodes without sampled neighbours give
// the whole budget to the tuple.
inline Network random_network(int n, std::uint64_t seed,
                              const RandomNetworkOptions& opts = {}) {
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeWeights> extra(n);
  Eigen::VectorXd bias = Eigen::VectorXd::Zero(n);

  for (int i = 0; i < n; ++i) {
    std::vector<int> nbrs;
    for (int j = 0; j < n; ++j) {
      if (j != i && rng.uniform01() < opts.edge_prob) nbrs.push_back(j);
    }
    const double budget = rng.uniform(opts.budget_lo, opts.budget_hi);
    const double tuple_share = nbrs.empty() ? 1.0 : rng.uniform(opts.tuple_lo, opts.tuple_hi);

    double u0 = rng.uniform(0.05, 1.0), u1 = rng.uniform(0.05, 1.0), u2 = rng.uniform(0.05, 1.0);
    const double tuple_total = budget * tuple_share / (u0 + u1 + u2);
    extra[i] = NodeWeights{u0 * tuple_total, u1 * tuple_total, u2 * tuple_total};

    if (!nbrs.empty()) {
      std::vector<double> parts(nbrs.size());
      double total = 0.0;
      for (double& p : parts) {
        p = rng.uniform(0.05, 1.0);
        total += p;
      }
      const double edge_budget = budget * (1.0 - tuple_share);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        double w = edge_budget * parts[k] / total;
        if (opts.negative_edges && rng.uniform01() < 1.0 / 3.0) w = -w;
        edges.push_back(Edge{i, nbrs[k], w});
      }
    }
    bias[i] = opts.zero_bias ? 0.0 : rng.uniform(-1.0, 1.0);
  }
  return build_network(n, edges, extra, bias);
}

// Large sparse synthetic graph: a ring for connectivity plus `chords_per_node`
// random extra out-edges per node. Row budgets as in random_network, all
// weights nonnegative.
inline Network sparse_synthetic_network(int n, std::uint64_t seed, int chords_per_node = 3) {
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (chords_per_node + 1));
  std::vector<NodeWeights> extra(n);
  Eigen::VectorXd bias(n);

  for (int i = 0; i < n; ++i) {
    std::vector<int> nbrs;
    if (n > 1) nbrs.push_back((i + 1) % n);
    for (int c = 0; c < chords_per_node; ++c) {
      const int j = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      if (j != i) nbrs.push_back(j);
    }
    const double budget = rng.uniform(0.6, 0.95);
    const double tuple_share = nbrs.empty() ? 1.0 : rng.uniform(0.3, 0.7);
    double u0 = rng.uniform(0.05, 1.0), u1 = rng.uniform(0.05, 1.0), u2 = rng.uniform(0.05, 1.0);
    const double tuple_total = budget * tuple_share / (u0 + u1 + u2);
    extra[i] = NodeWeights{u0 * tuple_total, u1 * tuple_total, u2 * tuple_total};
    if (!nbrs.empty()) {
      const double edge_w = budget * (1.0 - tuple_share) / static_cast<double>(nbrs.size());
      for (int j : nbrs) edges.push_back(Edge{i, j, edge_w});
    }
    bias[i] = rng.uniform(-1.0, 1.0);
  }
  return build_network(n, edges, extra, bias);
}

// Random undirected simple graph in edge-list form, suitable for the
// degree-driven network builders. Each unordered pair joins with probability
// `edge_prob` and expands to both directed arcs, matching the loader's
// symmetrized representation.
inline EdgeListData random_edge_list(int n, std::uint64_t seed, double edge_prob = 0.3) {
  Rng rng(seed);
  EdgeListData data;
  data.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < edge_prob) {
        data.edges.push_back(LoadedEdge{i, j, std::nullopt});
        data.edges.push_back(LoadedEdge{j, i, std::nullopt});
      }
    }
  }
  return data;
}

// Random positive-or-mixed score vector for strategy-level checks.
inline Eigen::VectorXd random_scores(int n, std::uint64_t seed, bool allow_negative = true) {
  Rng rng(seed);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = allow_negative ? rng.uniform(-0.5, 1.0) : rng.uniform(0.05, 1.0);
  }
  return s;
}

}  // namespace campopt::testing

#endif  // CAMPOPT_TESTING_HPP_
