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

#ifndef CAMPOPT_STRATEGIES_CCC_HPP_
#define CAMPOPT_STRATEGIES_CCC_HPP_

// Stackelberg play under the coupled constraint x_i + y_i <= 1: node
// attention is shared, so whatever the leader locks up is gone for the
// follower. The follower's best response is a plain greedy on its decision
// scores with per-node caps 1 - x_i, which makes the leader's problem
// tractable: the follower's marginal node sits at one of at most
// ceil(k_g + k_b) + 1 score thresholds (the distinct positive values of
// r w_b, plus a zero "dummy" for the case where the follower's budget is not
// exhausted). Per threshold, the leader's best play is a capped greedy on
// combined scores; the best threshold wins.
//
// Everything below works on decision-score vectors (r .* w_g, r .* w_b), so
// the min-max problem is solved by the same core with the camps' roles
// swapped and the objective negated.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "campopt/dynamics.hpp"
#include "campopt/errors.hpp"
#include "campopt/network.hpp"
#include "campopt/strategies_basic.hpp"

namespace campopt {

// Slack for the set-cardinality feasibility comparisons against fractional
// budgets; thresholds themselves are compared exactly (they are copies of
// entries of one score vector).
inline constexpr double kCccFeasibilitySlack = 1e-12;

// One follower-boundary hypothesis: "the bad camp's marginal node has score
// `threshold`". I_set holds the nodes strictly above it (the bad camp fills
// all their spare capacity), P_set the nodes exactly at it (the bad camp
// puts its leftover budget there). j_hat is a node attaining the threshold,
// or -1 for the zero-threshold dummy.
struct BoundaryCandidate {
  int j_hat = -1;
  double threshold = 0.0;
  std::vector<int> i_set;
  std::vector<int> p_set;
};

namespace detail {

// Candidates from raw follower scores, descending threshold, dummy last.
// Feasibility screen: |I| <= k_g + k_b (the leader must be able to block I
// down to the follower's budget) and, for real thresholds, |I| + |P| >= k_b
// (the follower's budget actually reaches its marginal node). The dummy
// skips the second test: with fewer than k_b units of positively scored
// capacity the follower simply leaves budget unused, which is exactly the
// zero-threshold regime.
inline std::vector<BoundaryCandidate> candidate_boundaries_for(const Eigen::VectorXd& sb,
                                                               const Budgets& budgets) {
  const int n = static_cast<int>(sb.size());
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (sb[i] > 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sb[a] != sb[b] ? sb[a] > sb[b] : a < b;
  });

  std::vector<BoundaryCandidate> out;
  const double i_limit = budgets.k_g + budgets.k_b + kCccFeasibilitySlack;
  std::size_t start = 0;
  while (start < order.size()) {
    // Group the exact ties at this score value into one candidate's P_set.
    std::size_t end = start;
    const double threshold = sb[order[start]];
    while (end < order.size() && sb[order[end]] == threshold) ++end;

    if (static_cast<double>(start) > i_limit) break;  // |I| only grows from here on
    BoundaryCandidate cand;
    cand.j_hat = order[start];
    cand.threshold = threshold;
    cand.i_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(start));
    cand.p_set.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                      order.begin() + static_cast<std::ptrdiff_t>(end));
    if (static_cast<double>(end) >= budgets.k_b - kCccFeasibilitySlack) {
      out.push_back(std::move(cand));
    }
    start = end;
  }

  if (static_cast<double>(order.size()) <= i_limit) {
    BoundaryCandidate dummy;
    dummy.i_set = order;
    for (int i = 0; i < n; ++i) {
      if (sb[i] == 0.0) dummy.p_set.push_back(i);
    }
    out.push_back(std::move(dummy));
  }
  return out;
}

// Leader's best play against one boundary hypothesis. Maximizes the combined
// scores nu_i = sg_i + max(sb_i - threshold, 0) subject to
//   sum_{I} x >= |I| - k_b          (forced blocking of the top nodes),
//   sum_{I u P} x <= |I| + |P| - k_b (leave the follower room at the boundary),
//   sum x <= k_g, 0 <= x <= 1.
// Phase one places the forced minimum inside I by descending nu; the single
// greedy pass that follows tops nodes up in descending nu, charging I u P
// placements against the shared capacity and spilling past the boundary set
// once that capacity is gone.
//
// The room constraint expresses that the follower exhausts its budget at a
// positive marginal score, which is exactly what a nonzero threshold
// hypothesizes. The zero-threshold dummy covers the complementary regime —
// the follower's budget constraint has a zero shadow price — so there the
// leader may take as much of I u P as it likes (squeezing the follower below
// its budget, or leaving it slack when positively scored capacity runs out).
// Every candidate's objective is a valid lower bound on the leader's value,
// and the regime split guarantees one candidate attains it.
inline Eigen::VectorXd leader_allocation_for(const BoundaryCandidate& cand,
                                             const Eigen::VectorXd& sg,
                                             const Eigen::VectorXd& sb, const Budgets& budgets) {
  const int n = static_cast<int>(sg.size());
  Eigen::VectorXd nu = sg;
  std::vector<char> in_ip(n, 0);
  for (int i : cand.i_set) {
    nu[i] += sb[i] - cand.threshold;
    in_ip[i] = 1;
  }
  for (int i : cand.p_set) in_ip[i] = 1;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double ip_size = static_cast<double>(cand.i_set.size() + cand.p_set.size());
  double ip_room = ip_size - budgets.k_b;
  if (cand.j_hat < 0) {
    ip_room = std::numeric_limits<double>::infinity();
  }
  double budget_left = budgets.k_g;

  const double min_fill =
      std::min(std::max(static_cast<double>(cand.i_set.size()) - budgets.k_b, 0.0), budget_left);
  if (min_fill > 0.0) {
    std::vector<int> i_order = cand.i_set;
    std::sort(i_order.begin(), i_order.end(),
              [&](int a, int b) { return nu[a] != nu[b] ? nu[a] > nu[b] : a < b; });
    double left = min_fill;
    for (int i : i_order) {
      if (left <= 0.0) break;
      x[i] = std::min(1.0, left);
      left -= x[i];
    }
    budget_left -= min_fill;
    ip_room -= min_fill;
  }

  for (int i : descending_order(nu)) {
    if (budget_left <= 0.0) break;
    if (nu[i] <= 0.0) break;
    double take = std::min(1.0 - x[i], budget_left);
    if (in_ip[i]) take = std::min(take, ip_room);
    if (take <= 0.0) continue;
    x[i] += take;
    budget_left -= take;
    if (in_ip[i]) ip_room -= take;
  }
  return x;
}

// The follower's best-response value against x at this boundary, as a
// closed form: leader gain on combined scores, minus the follower's fixed
// harvest above the threshold, minus the budget spent at the threshold.
inline double boundary_objective(const BoundaryCandidate& cand, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& nu_free_part, const Eigen::VectorXd& sb,
                                 double k_b) {
  double obj = -cand.threshold * k_b;
  for (int i = 0; i < x.size(); ++i) {
    const double bonus = std::max(sb[i] - cand.threshold, 0.0);
    obj += x[i] * (nu_free_part[i] + bonus) - bonus;
  }
  return obj;
}

// Greedy follower: fill descending scores within the spare capacity 1 - x.
inline Eigen::VectorXd best_response_for(const Eigen::VectorXd& sb, const Eigen::VectorXd& x,
                                         double k_b) {
  const Eigen::VectorXd caps = (1.0 - x.array()).max(0.0).matrix();
  return greedy_fill(sb, caps, k_b);
}

struct CccCore {
  Eigen::VectorXd x;            // leader's allocation
  Eigen::VectorXd y;            // follower's best response
  double objective = 0.0;       // leader-optimal value, bias excluded
  BoundaryCandidate chosen;
  int num_candidates = 0;
};

inline CccCore ccc_core(const Eigen::VectorXd& s_lead, const Eigen::VectorXd& s_follow,
                        const Budgets& budgets) {
  const std::vector<BoundaryCandidate> cands = candidate_boundaries_for(s_follow, budgets);
  CccCore best;
  best.num_candidates = static_cast<int>(cands.size());
  bool have = false;
  for (const BoundaryCandidate& cand : cands) {
    Eigen::VectorXd x = leader_allocation_for(cand, s_lead, s_follow, budgets);
    const double obj = boundary_objective(cand, x, s_lead, s_follow, budgets.k_b);
    const bool better =
        !have || obj > best.objective ||
        (obj == best.objective && cand.threshold < best.chosen.threshold);
    if (better) {
      best.objective = obj;
      best.x = std::move(x);
      best.chosen = cand;
      have = true;
    }
  }
  best.y = best_response_for(s_follow, best.x, budgets.k_b);
  return best;
}

inline void fill_ccc_meta(GameOutcome& out, const CccCore& core) {
  out.meta["chosen_jhat"] = static_cast<double>(core.chosen.j_hat);
  out.meta["threshold"] = core.chosen.threshold;
  out.meta["i_size"] = static_cast<double>(core.chosen.i_set.size());
  out.meta["p_size"] = static_cast<double>(core.chosen.p_set.size());
  out.meta["objective"] = core.objective;
  out.meta["num_candidates"] = static_cast<double>(core.num_candidates);
}

}  // namespace detail

inline std::vector<BoundaryCandidate> candidate_boundaries(const Network& net,
                                                           const Budgets& budgets) {
  detail::require_budget(budgets.k_g, "k_g");
  detail::require_budget(budgets.k_b, "k_b");
  return detail::candidate_boundaries_for(bad_scores(net), budgets);
}

inline Allocation good_allocation_for_boundary(const BoundaryCandidate& cand, const Network& net,
                                               const Budgets& budgets) {
  return Allocation{
      detail::leader_allocation_for(cand, good_scores(net), bad_scores(net), budgets),
      budgets.k_g, 1.0};
}

// Follower greedy against a fixed leader allocation: descending r w_b with
// per-node caps 1 - x_i, fractional remainder, stop at nonpositive scores.
inline Allocation bad_best_response(const Network& net, const Allocation& x, double k_b) {
  detail::require_budget(k_b, "k_b");
  if (x.amounts.size() != net.n()) {
    throw Error(ErrorCode::DimensionMismatch, "allocation length must match network size");
  }
  return Allocation{detail::best_response_for(bad_scores(net), x.amounts, k_b), k_b, 1.0};
}

// Good camp moves first under x + y <= 1. The reported value evaluates the
// chosen pair through opinion_sum, so it compares bit-for-bit against any
// other strategy scored the same way; the threshold construction's own
// objective lands in meta["value_decomposed"] and agrees up to roundoff.
inline GameOutcome ccc_maxmin(const Network& net, const Budgets& budgets) {
  detail::require_budget(budgets.k_g, "k_g");
  detail::require_budget(budgets.k_b, "k_b");
  detail::CccCore core = detail::ccc_core(good_scores(net), bad_scores(net), budgets);
  GameOutcome out;
  out.value = opinion_sum(net, core.x, core.y);
  out.meta["value_decomposed"] = bias_contribution(net) + core.objective;
  out.x = Allocation{std::move(core.x), budgets.k_g, 1.0};
  out.y = Allocation{std::move(core.y), budgets.k_b, 1.0};
  detail::fill_ccc_meta(out, core);
  return out;
}

// Bad camp moves first. Swapping the camps' score vectors and budgets and
// negating opinions turns this into the max-min problem the core already
// solves; the outcome is mapped back (leader = bad camp), so `x`/`y` below
// are again the good and bad camps' allocations. Meta audits the swapped
// computation: the threshold lives on the good camp's score scale.
inline GameOutcome ccc_minmax(const Network& net, const Budgets& budgets) {
  detail::require_budget(budgets.k_g, "k_g");
  detail::require_budget(budgets.k_b, "k_b");
  detail::CccCore core = detail::ccc_core(bad_scores(net), good_scores(net),
                                          Budgets{budgets.k_b, budgets.k_g});
  GameOutcome out;
  out.value = opinion_sum(net, core.y, core.x);
  out.meta["value_decomposed"] = -(-bias_contribution(net) + core.objective);
  out.x = Allocation{std::move(core.y), budgets.k_g, 1.0};
  out.y = Allocation{std::move(core.x), budgets.k_b, 1.0};
  detail::fill_ccc_meta(out, core);
  return out;
}

}  // namespace campopt

#endif  // CAMPOPT_STRATEGIES_CCC_HPP_
